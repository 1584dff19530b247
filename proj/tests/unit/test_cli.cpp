#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "critline/errors.hpp"

using namespace critline;

namespace {
struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  const int c = cli::dispatch(args, o, e);
  return {c, o.str(), e.str()};
}
}  // namespace

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({"moment"}).code, 2);  // --form is required
  EXPECT_EQ(run({"zeta", "--t", "abc"}).code, 2);
  EXPECT_EQ(run({"zeta", "--t", "0", "--sigma", "1"}).code, 1);  // pole
  EXPECT_EQ(run({"kloosterman", "--a", "1", "--b", "1", "--c", "0"}).code, 2);  // validator
  EXPECT_EQ(run({"lvalue", "--form", "delta", "--t", "5", "--engine", "afe"}).code, 1);
}

TEST(Cli, ZetaAtTheCentralPoint) {
  const auto r = run({"zeta", "--t", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("-1.46035450880959"), std::string::npos) << r.out;
}

TEST(Cli, KloostermanPrintsWeilBound) {
  const auto r = run({"kloosterman", "--a", "5", "--b", "7", "--c", "97"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("-14.2218269441732"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("weil_bound"), std::string::npos);
}

TEST(Cli, MomentJsonFieldsExact) {
  const auto r = run({"moment", "--form", "delta", "--T", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, cli::kReportFields);
  EXPECT_EQ(j["seconds"].get<double>(), 0.0);
  EXPECT_EQ(j["T"].get<double>(), 60.0);
  EXPECT_EQ(run({"moment", "--form", "delta", "--T", "60"}).out, r.out);
}

TEST(Cli, ConfigFileFillsUnsetOptions) {
  const auto dir = std::filesystem::temp_directory_path() / "critline_cli_test";
  std::filesystem::create_directories(dir);
  const auto cfg = dir / "run.cfg";
  std::ofstream(cfg) << "# comment\n\nT = 60\nwindow-delta = 6\n";
  const auto a = run({"--config", cfg.string(), "moment", "--form", "delta"});
  const auto b = run({"moment", "--form", "delta", "--T", "60", "--window-delta", "6"});
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  // the command line wins over the file
  const auto c = run({"--config", cfg.string(), "moment", "--form", "delta", "--T", "70"});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(nlohmann::json::parse(c.out)["T"].get<double>(), 70.0);
  std::ofstream(cfg) << "garbage line\n";
  EXPECT_EQ(run({"--config", cfg.string(), "zeta", "--t", "1"}).code, 1);
  std::filesystem::remove_all(dir);
}

TEST(Cli, ConfigParser) {
  std::istringstream in("# x\na = 1\n\nb=two words\n");
  const auto m = cli::parse_config(in);
  EXPECT_EQ(m.at("a"), "1");
  EXPECT_EQ(m.at("b"), "two words");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(cli::parse_config(bad), DataError);
}

TEST(Cli, CsvMatchesJsonColumns) {
  std::string header = cli::report_csv_header();
  std::string joined;
  for (const auto& k : cli::kReportFields) joined += (joined.empty() ? "" : ",") + k;
  EXPECT_EQ(header.substr(0, header.find('\n')), joined);
  EXPECT_EQ(cli::fmt(1.0 / 3), "0.333333333333333");
}

TEST(Cli, TableHeader) { EXPECT_NEAR(cli::table_mu(CRITLINE_TEST_TABLE), 13.7797513518907, 1e-12); }

TEST(Cli, SelftestPasses) {
  const auto r = run({"selftest", "--table", CRITLINE_TEST_TABLE});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
}

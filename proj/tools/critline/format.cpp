#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "critline/errors.hpp"

namespace critline::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// nlohmann prints the shortest round-trip form, so rounding through %.15g
// first leaves at most 15 significant digits in the JSON text.
double round15(double x) { return std::strtod(fmt(x).c_str(), nullptr); }

}  // namespace

const std::vector<std::string> kReportFields = {
    "T",         "c",     "l_one",       "zeta2",       "moment_re", "moment_im",         "main_term",
    "residual_re", "residual_im", "ratio", "grid_step", "panels",    "richardson_defect", "seconds"};

std::map<std::string, std::string> parse_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw DataError("config line " + std::to_string(lineno) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read config file " + path);
  return parse_config(in);
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

std::string report_json(const moments::MomentReport& r) {
  nlohmann::ordered_json j;
  j["T"] = round15(r.T);
  j["c"] = round15(r.c);
  j["l_one"] = round15(r.l_one);
  j["zeta2"] = round15(r.zeta2);
  j["moment_re"] = round15(r.moment.real());
  j["moment_im"] = round15(r.moment.imag());
  j["main_term"] = round15(r.main_term);
  j["residual_re"] = round15(r.residual.real());
  j["residual_im"] = round15(r.residual.imag());
  j["ratio"] = round15(r.ratio);
  j["grid_step"] = round15(r.grid_step);
  j["panels"] = r.panels;
  j["richardson_defect"] = round15(r.richardson_defect);
  j["seconds"] = round15(r.seconds);
  return j.dump(2) + "\n";
}

std::string report_csv_header() {
  std::string s;
  for (std::size_t i = 0; i < kReportFields.size(); ++i) s += (i ? "," : "") + kReportFields[i];
  return s + "\n";
}

std::string report_csv_row(const moments::MomentReport& r) {
  std::ostringstream o;
  o << fmt(r.T) << ',' << fmt(r.c) << ',' << fmt(r.l_one) << ',' << fmt(r.zeta2) << ',' << fmt(r.moment.real())
    << ',' << fmt(r.moment.imag()) << ',' << fmt(r.main_term) << ',' << fmt(r.residual.real()) << ','
    << fmt(r.residual.imag()) << ',' << fmt(r.ratio) << ',' << fmt(r.grid_step) << ',' << r.panels << ','
    << fmt(r.richardson_defect) << ',' << fmt(r.seconds) << '\n';
  return o.str();
}

double table_mu(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read eigenvalue table " + path);
  std::string line;
  while (std::getline(in, line) && !line.empty() && line[0] == '#') {
    const auto p = line.find("R =");
    if (p != std::string::npos) return std::strtod(line.c_str() + p + 3, nullptr);
  }
  return 0.0;
}

}  // namespace critline::cli

#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "critline/moments.hpp"

namespace critline::cli {

// Flat key=value file: '#' starts a comment, blank lines are skipped, keys
// are the long flag names without the dashes.
std::map<std::string, std::string> read_config(const std::string& path);
std::map<std::string, std::string> parse_config(std::istream& in);

// %.15g
std::string fmt(double x);

// The report in the field order of the JSON schema.
std::string report_json(const moments::MomentReport& r);
std::string report_csv_header();
std::string report_csv_row(const moments::MomentReport& r);
extern const std::vector<std::string> kReportFields;

// R from a "# R = ..." header line of an eigenvalue table, 0 if absent.
double table_mu(const std::string& path);

struct SelftestRow {
  std::string module;
  std::string check;
  bool pass = false;
  std::string detail;
};
std::vector<SelftestRow> run_selftest(const std::string& maass_table);

// Exit status 0 on success, 1 on a library error, 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace critline::cli

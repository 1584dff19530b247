#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli.hpp"
#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/forms.hpp"
#include "critline/lfunc.hpp"
#include "critline/moments.hpp"
#include "critline/parallel.hpp"
#include "critline/sums.hpp"
#include "critline/voronoi.hpp"

#ifndef CRITLINE_DEFAULT_TABLE
#define CRITLINE_DEFAULT_TABLE "maass_even_r13.78.tsv"
#endif

namespace critline::cli {

namespace {

struct FormArgs {
  std::string form;
  std::string table = CRITLINE_DEFAULT_TABLE;
  double mu = 0.0;
  std::size_t n_max = 8192;  // Maass tables are read up to here
};

void add_form_options(CLI::App* sub, FormArgs& fa, bool required) {
  auto* o = sub->add_option("--form", fa.form, "delta, or maass (eigenvalue table)")
                ->check(CLI::IsMember({"delta", "maass"}));
  if (required) o->required();
  sub->add_option("--table", fa.table, "eigenvalue table for --form maass");
  sub->add_option("--mu", fa.mu, "spectral parameter; default from the table header");
}

forms::FormDescriptor load_maass(const FormArgs& fa) {
  const double mu = fa.mu != 0.0 ? fa.mu : table_mu(fa.table);
  if (mu == 0.0) throw PreconditionError("no --mu given and the table has no '# R =' header");
  return forms::ingest_eigenvalues_file(fa.table, mu, fa.n_max);
}

// Δ sized for height T, or the Maass table as read.
forms::FormDescriptor load_form(const FormArgs& fa, double T, moments::Engine engine) {
  if (fa.form == "maass") return load_maass(fa);
  const auto shape = forms::build_delta(1);
  return forms::build_delta(std::max<std::size_t>(64, moments::required_table_length(shape, T, engine)));
}

moments::Engine parse_engine(const std::string& s) {
  return s == "afe" ? moments::Engine::afe : moments::Engine::direct;
}

double parse_grid_step(const std::string& s) {
  if (s == "auto") return 0.0;
  char* end = nullptr;
  const double h = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !(h > 0.0)) throw CLI::ValidationError("--grid-step", "expected 'auto' or a positive number");
  return h;
}

std::vector<double> parse_list(const std::string& s, const char* flag) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double x = std::strtod(item.c_str(), &end);
    if (end == item.c_str() || *end != '\0') throw CLI::ValidationError(flag, "expected a comma-separated list of numbers");
    v.push_back(x);
  }
  if (v.empty()) throw CLI::ValidationError(flag, "empty list");
  return v;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DataError("cannot write " + path);
  f << text;
}

// Fills options the command line left unset from the config map.
void apply_config(CLI::App* sub, const std::map<std::string, std::string>& kv) {
  for (CLI::Option* opt : sub->get_options()) {
    if (opt->count() > 0 || opt->get_lnames().empty()) continue;
    const auto it = kv.find(opt->get_lnames().front());
    if (it == kv.end()) continue;
    if (opt->get_expected_min() == 0) {
      const std::string v = it->second;
      if (v == "1" || v == "true" || v == "on" || v == "yes") {
        opt->add_result("true");
        opt->run_callback();
      }
      continue;
    }
    opt->add_result(it->second);
    opt->run_callback();
  }
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"critline: numerics for mixed moments of L-functions on the critical line"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  std::string config_path;
  std::size_t workers = 0;
  app.add_option("--config", config_path, "flat key=value file; flags override it");
  app.add_option("--workers", workers, "worker threads (CRITLINE_WORKERS wins)")->check(CLI::PositiveNumber);

  // eigens
  FormArgs eig_form;
  std::size_t eig_n = 1000;
  bool eig_primes = false;
  std::string eig_out;
  auto* eigens = app.add_subcommand("eigens", "write a Hecke eigenvalue table");
  add_form_options(eigens, eig_form, true);
  eigens->add_option("--n-max", eig_n, "rows")->check(CLI::PositiveNumber);
  eigens->add_flag("--primes-only", eig_primes, "prime rows only");
  eigens->add_option("--out", eig_out, "output file (default stdout)");

  // ingest
  std::string ing_file, ing_out;
  double ing_mu = 0.0;
  std::size_t ing_n = 8192;
  auto* ingest = app.add_subcommand("ingest", "read, complete and validate an eigenvalue table");
  ingest->add_option("--file", ing_file, "table: n<TAB>value rows, '#' header lines")->required();
  ingest->add_option("--mu", ing_mu, "spectral parameter; default from the header");
  ingest->add_option("--n-max", ing_n, "complete up to n")->check(CLI::PositiveNumber);
  ingest->add_option("--out", ing_out, "write the completed table");

  // zeta
  double z_t = 0.0, z_sigma = 0.5;
  auto* zeta = app.add_subcommand("zeta", "ζ(σ+it)");
  zeta->add_option("--t", z_t, "height")->required();
  zeta->add_option("--sigma", z_sigma, "real part");

  // lvalue
  FormArgs lv_form;
  double lv_t = 0.0;
  std::string lv_engine = "smoothed";
  auto* lvalue = app.add_subcommand("lvalue", "L(½+it, f)");
  add_form_options(lvalue, lv_form, true);
  lvalue->add_option("--t", lv_t, "height")->required();
  lvalue->add_option("--engine", lv_engine, "smoothed or afe")->check(CLI::IsMember({"smoothed", "afe"}));

  // moment
  FormArgs mo_form;
  double mo_T = 800, mo_delta = 8;
  std::string mo_grid = "auto", mo_engine = "direct", mo_out;
  bool mo_sharp = false, mo_time = false;
  auto* moment = app.add_subcommand("moment", "∫V(t/T)L(½+it,f)ζ(½−it)²dt against its main term");
  add_form_options(moment, mo_form, true);
  moment->add_option("--T", mo_T, "height")->check(CLI::PositiveNumber);
  moment->add_option("--window-delta", mo_delta, "ramp steepness Δ_w of the window")->check(CLI::PositiveNumber);
  moment->add_flag("--sharp", mo_sharp, "indicator of [T, 2T] instead of the smooth window");
  moment->add_option("--grid-step", mo_grid, "'auto' (0.1/log T) or a step");
  moment->add_option("--engine", mo_engine, "direct or afe")->check(CLI::IsMember({"direct", "afe"}));
  moment->add_option("--out", mo_out, "JSON report (default stdout)");
  moment->add_flag("--record-time", mo_time, "fill 'seconds'; otherwise 0 so reports are reproducible");

  // scaling
  FormArgs sc_form;
  std::string sc_T = "200,400,800,1600", sc_grid = "auto", sc_engine = "direct", sc_out;
  double sc_delta = 8;
  bool sc_time = false;
  auto* scaling = app.add_subcommand("scaling", "moment residuals over several T and their fitted exponent");
  add_form_options(scaling, sc_form, true);
  scaling->add_option("--T", sc_T, "comma-separated heights");
  scaling->add_option("--window-delta", sc_delta, "ramp steepness Δ_w")->check(CLI::PositiveNumber);
  scaling->add_option("--grid-step", sc_grid, "'auto' or a step");
  scaling->add_option("--engine", sc_engine, "direct or afe")->check(CLI::IsMember({"direct", "afe"}));
  scaling->add_option("--out", sc_out, "CSV (default stdout)");
  scaling->add_flag("--record-time", sc_time, "fill 'seconds'");

  // kloosterman
  std::int64_t k_a = 1, k_b = 1, k_c = 1;
  auto* kloost = app.add_subcommand("kloosterman", "S(a,b;c) and the Weil bound");
  kloost->add_option("--a", k_a)->required();
  kloost->add_option("--b", k_b)->required();
  kloost->add_option("--c", k_c)->required()->check(CLI::PositiveNumber);

  // bilinear
  double bi_M = 16, bi_N = 16, bi_C = 16;
  int bi_trials = 4, bi_sign = 1;
  std::uint64_t bi_seed = 1;
  auto* bilinear = app.add_subcommand("bilinear", "smoothed bilinear Kloosterman sums against C√(MN)‖a‖‖b‖");
  bilinear->add_option("--M", bi_M)->check(CLI::PositiveNumber);
  bilinear->add_option("--N", bi_N)->check(CLI::PositiveNumber);
  bilinear->add_option("--C", bi_C)->check(CLI::PositiveNumber);
  bilinear->add_option("--trials", bi_trials)->check(CLI::PositiveNumber);
  bilinear->add_option("--seed", bi_seed, "first seed; trial i uses seed + i");
  bilinear->add_option("--sign", bi_sign, "S(m, ±n; c)")->check(CLI::IsMember({-1, 1}));

  // voronoi-check
  FormArgs vo_form;
  vo_form.form = "maass";
  std::int64_t vo_q = 1, vo_a = 1;
  double vo_N = 10;
  auto* vcheck = app.add_subcommand("voronoi-check", "both sides of the Voronoi formula for a Maass form");
  vcheck->add_option("--q", vo_q)->check(CLI::PositiveNumber);
  vcheck->add_option("--a", vo_a);
  vcheck->add_option("--N", vo_N)->check(CLI::PositiveNumber);
  vcheck->add_option("--table", vo_form.table, "eigenvalue table");
  vcheck->add_option("--mu", vo_form.mu, "spectral parameter; default from the header");

  // selftest
  std::string st_table = CRITLINE_DEFAULT_TABLE;
  auto* selftest = app.add_subcommand("selftest", "property checks of every module");
  selftest->add_option("--table", st_table, "Maass table for the Voronoi checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
    if (!config_path.empty()) {
      const auto kv = read_config(config_path);
      for (CLI::App* sub : app.get_subcommands()) apply_config(sub, kv);
      if (app.get_option("--workers")->count() == 0 && kv.count("workers")) workers = std::stoul(kv.at("workers"));
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  if (workers > 0) set_worker_count(workers);

  try {
    if (eigens->parsed()) {
      forms::FormDescriptor f;
      if (eig_form.form == "maass") {
        eig_form.n_max = eig_n;
        f = load_maass(eig_form);
      } else {
        f = forms::build_delta(eig_n);
      }
      std::ostringstream o;
      forms::write_eigenvalues(o, f, eig_primes);
      emit(eig_out, o.str(), out);
    } else if (ingest->parsed()) {
      const double mu = ing_mu != 0.0 ? ing_mu : table_mu(ing_file);
      const auto f = forms::ingest_eigenvalues_file(ing_file, mu, ing_n);
      const auto inv = forms::check_invariants(f);
      out << "n_max " << f.n_max() << "\n"
          << "mu " << fmt(f.mu) << "\n"
          << "hecke_defect " << fmt(inv.max_hecke_defect) << "\n"
          << "rankin_ratio_min " << fmt(inv.min_rankin_ratio) << "\n"
          << "rankin_ratio_max " << fmt(inv.max_rankin_ratio) << "\n";
      if (!ing_out.empty()) {
        std::ostringstream o;
        forms::write_eigenvalues(o, f, false);
        emit(ing_out, o.str(), out);
      }
    } else if (zeta->parsed()) {
      const cplx z = lfunc::zeta(cplx(z_sigma, z_t));
      out << fmt(z.real()) << " " << fmt(z.imag()) << "\n";
    } else if (lvalue->parsed()) {
      const auto engine = lv_engine == "afe" ? moments::Engine::afe : moments::Engine::direct;
      const auto f = load_form(lv_form, std::max(std::abs(lv_t), 10.0), engine);
      const cplx v = lv_engine == "afe" ? lfunc::afe_l_value(f, lv_t, lfunc::DyadicPartition{})
                                        : lfunc::smoothed_l_value(f, lv_t);
      out << fmt(v.real()) << " " << fmt(v.imag()) << "\n";
    } else if (moment->parsed()) {
      const auto engine = parse_engine(mo_engine);
      const auto f = load_form(mo_form, mo_T, engine);
      moments::MomentJob job;
      job.form = &f;
      job.T = mo_T;
      job.window = mo_sharp ? moments::sharp_window() : moments::make_window(mo_delta);
      job.grid_step = parse_grid_step(mo_grid);
      job.engine = engine;
      auto r = moments::mixed_moment(job);
      if (!mo_time) r.seconds = 0.0;
      emit(mo_out, report_json(r), out);
    } else if (scaling->parsed()) {
      const auto Ts = parse_list(sc_T, "--T");
      const auto engine = parse_engine(sc_engine);
      const auto f = load_form(sc_form, *std::max_element(Ts.begin(), Ts.end()), engine);
      auto study = moments::scaling_study(f, Ts, sc_delta, parse_grid_step(sc_grid), engine);
      std::string text = report_csv_header();
      for (auto& r : study.rows) {
        if (!sc_time) r.seconds = 0.0;
        text += report_csv_row(r);
      }
      emit(sc_out, text, out);
      err << "fitted residual exponent " << fmt(study.exponent) << "\n";
    } else if (kloost->parsed()) {
      const double s = arith::kloosterman_sum({k_a, k_b, k_c});
      const auto g = std::gcd(std::gcd(std::abs(k_a), std::abs(k_b)), k_c);
      const double weil = static_cast<double>(arith::divisor_count(static_cast<std::uint64_t>(k_c))) *
                          std::sqrt(static_cast<double>(g)) * std::sqrt(static_cast<double>(k_c));
      out << "S " << fmt(s) << "\n"
          << "weil_bound " << fmt(weil) << "\n";
    } else if (bilinear->parsed()) {
      double worst = 0.0;
      for (int i = 0; i < bi_trials; ++i) {
        const auto cfg = sums::random_bilinear(bi_M, bi_N, bi_seed + static_cast<std::uint64_t>(i), bi_sign);
        const double r = sums::bilinear_average_ratio(cfg, bi_C);
        worst = std::max(worst, r);
        out << "trial " << i << " ratio " << fmt(r) << "\n";
      }
      out << "max_ratio " << fmt(worst) << "\n";
    } else if (vcheck->parsed()) {
      const auto f = load_maass(vo_form);
      const auto k = voronoi::make_kernel(f.mu);
      const auto c = voronoi::voronoi_check(f, vo_a, vo_q, vo_N, k);
      out << "lhs " << fmt(c.lhs.real()) << " " << fmt(c.lhs.imag()) << "\n"
          << "rhs " << fmt(c.rhs.real()) << " " << fmt(c.rhs.imag()) << "\n"
          << "residual " << fmt(c.residual) << "\n"
          << "a_bar " << c.a_bar << "\n";
    } else if (selftest->parsed()) {
      const auto rows = run_selftest(st_table);
      bool all = true;
      for (const auto& r : rows) {
        all = all && r.pass;
        char buf[256];
        std::snprintf(buf, sizeof buf, "%-12s %-44s %s  %s\n", r.module.c_str(), r.check.c_str(),
                      r.pass ? "PASS" : "FAIL", r.detail.c_str());
        out << buf;
      }
      out << (all ? "all checks passed" : "some checks FAILED") << "\n";
      return all ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

int dispatch(int argc, char** argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace critline::cli

#include "critline/forms.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>

#include "critline/arith.hpp"
#include "critline/errors.hpp"
#include "critline/lfunc.hpp"
#include "critline/special.hpp"

namespace critline::forms {

bool FormDescriptor::self_dual() const {
  for (const cplx& k : kappa) {
    bool closed = false;
    for (const cplx& other : kappa)
      if (std::abs(other - std::conj(k)) < 1e-14) closed = true;
    if (!closed) return false;
  }
  return std::abs(root_number.imag()) < 1e-14;
}

cplx log_gamma_factor(const FormDescriptor& f, cplx s) {
  cplx acc = -0.5 * f.degree * s * std::log(std::numbers::pi);
  for (const cplx& k : f.kappa) acc += special::log_gamma((s - k) / 2.0);
  return acc;
}

FormDescriptor build_delta(std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("build_delta: n_max must be >= 1");
  const auto tau = arith::tau_table(n_max);
  FormDescriptor f;
  f.kind = FormKind::holomorphic;
  f.degree = 2;
  // (2π)^{−s}Γ(s+11/2) = const·π^{−s}Γ((s+11/2)/2)Γ((s+13/2)/2) by duplication.
  f.kappa = {cplx(-5.5, 0.0), cplx(-6.5, 0.0)};
  f.conductor = 1;
  f.root_number = 1.0;
  f.mu = 0.0;
  f.label = "delta";
  f.eigenvalues.resize(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) {
    // τ(n) stays below 2^120 in any table we can build, so the double
    // conversion is correctly rounded to within one ulp.
    const double tn = (*tau)[n - 1].get_d();
    f.eigenvalues[n - 1] = tn / std::pow(static_cast<double>(n), 5.5);
  }
  return f;
}

std::vector<double> complete_from_primes(const std::vector<double>& prime_values, std::size_t n_max) {
  std::vector<std::uint32_t> spf(n_max + 1, 0);
  for (std::size_t i = 2; i <= n_max; ++i) {
    if (spf[i] != 0) continue;
    for (std::size_t j = i; j <= n_max; j += i)
      if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
  }
  std::vector<double> lam(n_max + 1, 0.0);
  if (n_max >= 1) lam[1] = 1.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const std::size_t p = spf[n];
    std::size_t pe = p, rest = n / p;
    while (rest % p == 0) {
      pe *= p;
      rest /= p;
    }
    if (rest > 1) {
      lam[n] = lam[pe] * lam[rest];
    } else if (pe == p) {
      lam[n] = prime_values[p];
    } else {
      lam[n] = lam[p] * lam[n / p] - lam[n / (p * p)];
    }
  }
  return {lam.begin() + 1, lam.end()};
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

FormDescriptor ingest_eigenvalues(std::istream& source, double mu, std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("ingest_eigenvalues: n_max must be >= 1");
  std::map<std::size_t, double> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const auto tab = body.find_first_of("\t ");
    if (tab == std::string::npos)
      throw DataError("ingest_eigenvalues: malformed row at line " + std::to_string(line_no));
    const std::string ns = trim(body.substr(0, tab)), vs = trim(body.substr(tab + 1));
    std::size_t n = 0;
    double v = 0.0;
    try {
      std::size_t used = 0;
      const long long parsed = std::stoll(ns, &used);
      if (used != ns.size() || parsed < 1) throw std::invalid_argument("index");
      n = static_cast<std::size_t>(parsed);
      v = std::stod(vs, &used);
      if (used != vs.size() || !std::isfinite(v)) throw std::invalid_argument("value");
    } catch (const std::exception&) {
      throw DataError("ingest_eigenvalues: malformed row at line " + std::to_string(line_no));
    }
    if (rows.count(n) != 0)
      throw DataError("ingest_eigenvalues: duplicate row n=" + std::to_string(n));
    rows[n] = v;
  }
  if (auto it = rows.find(1); it != rows.end() && std::abs(it->second - 1.0) > 1e-12)
    throw DataError("ingest_eigenvalues: lambda(1) must be 1");

  std::vector<double> primes(n_max + 1, 0.0);
  for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(n_max))) {
    auto it = rows.find(p);
    if (it == rows.end()) throw DataError("ingest_eigenvalues: missing prime row p=" + std::to_string(p));
    primes[p] = it->second;
  }
  FormDescriptor f;
  f.kind = FormKind::maass;
  f.degree = 2;
  f.kappa = {cplx(0.0, mu), cplx(0.0, -mu)};
  f.conductor = 1;
  f.root_number = 1.0;
  f.mu = mu;
  f.label = "maass";
  f.eigenvalues = complete_from_primes(primes, n_max);

  for (const auto& [n, v] : rows) {
    if (n > n_max) continue;
    const double expect = f.eigenvalues[n - 1];
    if (std::abs(v - expect) > 1e-6 * std::max(1.0, std::abs(expect))) {
      std::ostringstream msg;
      msg << "ingest_eigenvalues: Hecke relation violated at n=" << n << " (row " << v
          << ", completed " << expect << ")";
      throw DataError(msg.str());
    }
  }
  const InvariantReport rep = check_invariants(f, 1e-6);
  if (!rep.ok) throw DataError("ingest_eigenvalues: " + rep.failure);
  return f;
}

FormDescriptor ingest_eigenvalues_file(const std::string& path, double mu, std::size_t n_max) {
  std::ifstream in(path);
  if (!in) throw DataError("ingest_eigenvalues: cannot open " + path);
  return ingest_eigenvalues(in, mu, n_max);
}

void write_eigenvalues(std::ostream& out, const FormDescriptor& f, bool primes_only) {
  out << "# form=" << f.label << " mu=" << std::setprecision(15) << f.mu << " n_max=" << f.n_max() << "\n";
  out << "# n\tlambda(n)\n";
  std::vector<bool> prime(f.n_max() + 1, false);
  for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(f.n_max()))) prime[p] = true;
  for (std::size_t n = 1; n <= f.n_max(); ++n) {
    if (primes_only && !prime[n]) continue;
    out << n << '\t' << std::setprecision(15) << f.lambda(n) << '\n';
  }
}

double hecke_defect(const FormDescriptor& f, std::size_t limit) {
  limit = std::min(limit, f.n_max());
  double worst = 0.0;
  for (std::size_t m = 1; m * m <= limit; ++m) {
    for (std::size_t n = m; m * n <= limit; ++n) {
      const std::size_t g = static_cast<std::size_t>(arith::gcd(static_cast<std::int64_t>(m), static_cast<std::int64_t>(n)));
      const double lhs = f.lambda(m) * f.lambda(n);
      double rhs = 0.0;
      for (std::size_t e = 1; e <= g; ++e)
        if (g % e == 0) rhs += f.lambda(m * n / (e * e));
      worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
  }
  return worst;
}

InvariantReport check_invariants(const FormDescriptor& f, double hecke_tol) {
  InvariantReport rep;
  if (f.n_max() == 0) {
    rep.ok = false;
    rep.failure = "empty eigenvalue table";
    return rep;
  }
  if (std::abs(f.lambda(1) - 1.0) > 1e-12) {
    rep.ok = false;
    rep.failure = "lambda(1) != 1";
    return rep;
  }
  rep.max_hecke_defect = hecke_defect(f, f.n_max());
  if (rep.max_hecke_defect > hecke_tol) {
    rep.ok = false;
    rep.failure = "Hecke relation defect " + std::to_string(rep.max_hecke_defect);
    return rep;
  }
  if (f.kind == FormKind::holomorphic) {
    for (std::uint32_t p : arith::primes_up_to(static_cast<std::uint32_t>(f.n_max()))) {
      if (std::abs(f.lambda(p)) > 2.0 + 1e-12) {
        rep.ok = false;
        rep.failure = "Deligne bound violated at p=" + std::to_string(p);
        return rep;
      }
    }
  }
  rep.min_rankin_ratio = 1e300;
  double acc = 0.0;
  std::size_t next = 1;
  for (std::size_t n = 1; n <= f.n_max(); ++n) {
    acc += f.lambda(n) * f.lambda(n);
    if (n == next) {
      const double r = acc / static_cast<double>(n);
      rep.min_rankin_ratio = std::min(rep.min_rankin_ratio, r);
      rep.max_rankin_ratio = std::max(rep.max_rankin_ratio, r);
      next *= 2;
    }
  }
  if (rep.min_rankin_ratio < 0.05 || rep.max_rankin_ratio > 20.0) {
    rep.ok = false;
    rep.failure = "Rankin-Selberg ratio outside [0.05, 20]";
  }
  return rep;
}

LAtOne l_at_one_detail(const FormDescriptor& f) {
  lfunc::CutoffKernel k;
  const std::size_t need = std::max(lfunc::cutoff_length(k, f, 1.0, 1e-15), lfunc::cutoff_length(k, f, 0.0, 1e-15));
  if (f.n_max() < need)
    throw TableTooShortError("l_at_one: eigenvalue table has " + std::to_string(f.n_max()) +
                             " entries, the cutoff sums need " + std::to_string(need));
  auto eval = [&](const lfunc::CutoffKernel& kk) {
    // L(1) = Σλ(n)n^{−1}W_1(n) + ε γ(0)/γ(1) Σ λ̄(n) W_0(n)
    const cplx first = lfunc::smoothed_sum(kk, f, 1.0, need);
    const cplx second = lfunc::smoothed_sum(kk, f, 0.0, need, true);
    const cplx chi = std::exp(log_gamma_factor(f, 0.0) - log_gamma_factor(f, 1.0));
    return first + f.root_number * chi * second;
  };
  lfunc::CutoffKernel fine = k;
  fine.resolution *= 2;
  const cplx coarse = eval(k), value = eval(fine);
  LAtOne out;
  out.value = value.real();
  out.imag = value.imag();
  out.discretization = std::abs(value - coarse);
  out.terms = need;
  if (out.discretization > 1e-8)
    throw ConvergenceError("l_at_one: contour discretizations disagree by " + std::to_string(out.discretization));
  return out;
}

double l_at_one(const FormDescriptor& f) { return l_at_one_detail(f).value; }

}  // namespace critline::forms

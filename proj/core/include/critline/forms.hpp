#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "critline/numeric.hpp"

namespace critline::forms {

enum class FormKind { holomorphic, maass };

// A level-one Hecke cusp form and the data of its L-function:
// γ(s,f) = π^{−ds/2} ∏ Γ((s−κ_j)/2), Λ(s,f) = q^{s/2}γ(s,f)L(s,f) = ε Λ(1−s, f̄).
struct FormDescriptor {
  FormKind kind = FormKind::holomorphic;
  int degree = 2;
  std::vector<cplx> kappa;
  long conductor = 1;
  cplx root_number = 1.0;
  double mu = 0.0;
  std::vector<double> eigenvalues;  // eigenvalues[n-1] = λ(n)
  std::string label;

  std::size_t n_max() const { return eigenvalues.size(); }
  double lambda(std::size_t n) const { return eigenvalues[n - 1]; }
  // Real coefficients and a conjugation-closed κ set: L(s̄,f) = conj L(s,f).
  bool self_dual() const;
};

// log γ(s,f) on the principal branch of each factor.
cplx log_gamma_factor(const FormDescriptor& f, cplx s);

FormDescriptor build_delta(std::size_t n_max);

// Rows `n<TAB>value`, '#' starts a header/comment line. Accepts a full prefix
// 1..n_max or prime rows only; the table is completed through the Hecke
// recurrences and validated.
FormDescriptor ingest_eigenvalues(std::istream& source, double mu, std::size_t n_max);
FormDescriptor ingest_eigenvalues_file(const std::string& path, double mu, std::size_t n_max);

void write_eigenvalues(std::ostream& out, const FormDescriptor& f, bool primes_only = false);

// Completes λ(n), n ≤ n_max, from λ(p) by multiplicativity and
// λ(p^{r+1}) = λ(p)λ(p^r) − λ(p^{r−1}). prime_values[p] is read for primes p.
std::vector<double> complete_from_primes(const std::vector<double>& prime_values, std::size_t n_max);

struct InvariantReport {
  bool ok = true;
  std::string failure;
  double max_hecke_defect = 0.0;
  double min_rankin_ratio = 0.0;
  double max_rankin_ratio = 0.0;
};

// λ(1)=1, the Hecke relations for mn ≤ n_max, Deligne's bound at primes for
// holomorphic forms, and the partial Rankin–Selberg ratio window [0.05, 20].
InvariantReport check_invariants(const FormDescriptor& f, double hecke_tol = 1e-10);

// max |λ(m)λ(n) − Σ_{e|(m,n)} λ(mn/e²)| / max(1, |λ(m)λ(n)|) over mn ≤ limit.
double hecke_defect(const FormDescriptor& f, std::size_t limit);

struct LAtOne {
  double value = 0.0;
  double imag = 0.0;          // imaginary residue of the smoothed sum
  double discretization = 0.0;  // |value(η) − value(η/2)|
  std::size_t terms = 0;
};

LAtOne l_at_one_detail(const FormDescriptor& f);
double l_at_one(const FormDescriptor& f);

}  // namespace critline::forms

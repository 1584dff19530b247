#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace critline::arith {

std::uint64_t divisor_count(std::uint64_t n);

// d(1..n_max) by sieve; index 0 is unused and holds 0.
std::vector<std::uint32_t> divisor_count_table(std::size_t n_max);

// τ(1..n_max) as exact integers; element i holds τ(i+1). tau_table returns
// the process-wide cached table (at least n_max entries, shared read-only).
// Requests above tau_limit() throw ResourceLimitError.
std::vector<mpz_class> ramanujan_tau(std::size_t n_max);
std::shared_ptr<const std::vector<mpz_class>> tau_table(std::size_t n_max);
std::size_t tau_limit();
void set_tau_limit(std::size_t limit);

// Euler's function and its cube as exact series up to q^n_max. Exposed so the
// Jacobi-identity shortcut used for τ can be cross-checked.
std::vector<mpz_class> euler_product_series(std::size_t n_max);
std::vector<mpz_class> jacobi_cube_series(std::size_t n_max);

std::int64_t mod_inverse(std::int64_t a, std::int64_t c);

struct KloostermanQuery {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 1;
};

double kloosterman_sum(const KloostermanQuery& q);

// Precomputed units, inverses and cosine table for one modulus, for callers
// that need S(a,b;c) for many (a,b) at fixed c.
class KloostermanModulus {
 public:
  explicit KloostermanModulus(std::int64_t c);
  std::int64_t modulus() const { return c_; }
  double sum(std::int64_t a, std::int64_t b) const;

 private:
  std::int64_t c_;
  std::vector<std::int64_t> units_;
  std::vector<std::int64_t> inverses_;
  std::vector<double> cos_;
};

bool is_prime(std::uint64_t n);
std::vector<std::uint32_t> primes_up_to(std::uint32_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);
std::uint32_t euler_phi(std::uint32_t n);

}  // namespace critline::arith

#include "critline/arith.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "critline/errors.hpp"
#include "critline/numeric.hpp"

namespace critline::arith {

std::uint64_t divisor_count(std::uint64_t n) {
  if (n == 0) throw PreconditionError("divisor_count: n must be >= 1");
  std::uint64_t count = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    std::uint64_t e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

std::vector<std::uint32_t> divisor_count_table(std::size_t n_max) {
  std::vector<std::uint32_t> d(n_max + 1, 0);
  for (std::size_t k = 1; k <= n_max; ++k)
    for (std::size_t m = k; m <= n_max; m += k) ++d[m];
  return d;
}

namespace {

// Sparse series as (exponent, coefficient) pairs.
using Sparse = std::vector<std::pair<std::size_t, long>>;

Sparse pentagonal_terms(std::size_t n_max) {
  Sparse terms{{0, 1}};
  for (long k = 1;; ++k) {
    const auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2);
    const auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2);
    if (e1 > n_max) break;
    const long sign = (k % 2 == 0) ? 1 : -1;
    terms.emplace_back(e1, sign);
    if (e2 <= n_max) terms.emplace_back(e2, sign);
  }
  return terms;
}

// (∏(1−qⁿ))³ = Σ_{k≥0} (−1)^k (2k+1) q^{k(k+1)/2}.
Sparse jacobi_terms(std::size_t n_max) {
  Sparse terms;
  for (long k = 0;; ++k) {
    const auto e = static_cast<std::size_t>(k * (k + 1) / 2);
    if (e > n_max) break;
    terms.emplace_back(e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1));
  }
  return terms;
}

std::vector<mpz_class> times_sparse(const std::vector<mpz_class>& p, const Sparse& s) {
  const std::size_t len = p.size();
  std::vector<mpz_class> r(len);
  for (const auto& [e, c] : s) {
    if (e >= len) continue;
    const unsigned long mag = static_cast<unsigned long>(c < 0 ? -c : c);
    for (std::size_t i = 0; i + e < len; ++i) {
      if (c > 0)
        mpz_addmul_ui(r[i + e].get_mpz_t(), p[i].get_mpz_t(), mag);
      else
        mpz_submul_ui(r[i + e].get_mpz_t(), p[i].get_mpz_t(), mag);
    }
  }
  return r;
}

// Same product in 128-bit integers with overflow detection; returns false if
// any partial sum leaves the range, in which case the caller falls back to
// GMP.
bool times_sparse_i128(std::vector<__int128>& p, const Sparse& s) {
  const std::size_t len = p.size();
  std::vector<__int128> r(len, 0);
  bool ok = true;
  for (const auto& [e, c] : s) {
    if (e >= len) continue;
    const __int128 cc = c;
    for (std::size_t i = 0; i + e < len; ++i) {
      __int128 prod;
      ok &= !__builtin_mul_overflow(p[i], cc, &prod);
      ok &= !__builtin_add_overflow(r[i + e], prod, &r[i + e]);
    }
    if (!ok) return false;
  }
  p.swap(r);
  return true;
}

mpz_class to_mpz(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 m = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  mpz_class r(static_cast<unsigned long>(m >> 64));
  r <<= 64;
  r += static_cast<unsigned long>(static_cast<std::uint64_t>(m));
  return neg ? mpz_class(-r) : r;
}

std::vector<mpz_class> dense(const Sparse& s, std::size_t len) {
  std::vector<mpz_class> r(len);
  for (const auto& [e, c] : s)
    if (e < len) r[e] += c;
  return r;
}

std::size_t g_tau_limit = 4'000'000;
std::mutex g_tau_mutex;
std::map<std::size_t, std::shared_ptr<const std::vector<mpz_class>>> g_tau_cache;

}  // namespace

std::vector<mpz_class> euler_product_series(std::size_t n_max) {
  return dense(pentagonal_terms(n_max), n_max + 1);
}

std::vector<mpz_class> jacobi_cube_series(std::size_t n_max) {
  return dense(jacobi_terms(n_max), n_max + 1);
}

std::size_t tau_limit() {
  std::lock_guard lock(g_tau_mutex);
  return g_tau_limit;
}

void set_tau_limit(std::size_t limit) {
  std::lock_guard lock(g_tau_mutex);
  g_tau_limit = limit;
}

std::shared_ptr<const std::vector<mpz_class>> tau_table(std::size_t n_max) {
  if (n_max == 0) throw PreconditionError("ramanujan_tau: n_max must be >= 1");
  std::lock_guard lock(g_tau_mutex);
  if (n_max > g_tau_limit)
    throw ResourceLimitError("ramanujan_tau: n_max " + std::to_string(n_max) +
                             " exceeds configured limit " + std::to_string(g_tau_limit));
  auto it = g_tau_cache.lower_bound(n_max);
  if (it != g_tau_cache.end()) return it->second;

  // Round up so nearby requests share one table.
  constexpr std::size_t kChunk = 1 << 14;
  std::size_t len = (n_max + kChunk - 1) / kChunk * kChunk;
  len = std::min(len, std::max(n_max, g_tau_limit));

  // q∏(1−qⁿ)²⁴ = q·C⁸ with C the Jacobi cube, so τ(n) is the coefficient of
  // q^{n−1} in C⁸. Seven sparse multiplications, all exact: 128-bit while
  // every partial sum fits, GMP otherwise.
  const Sparse c = jacobi_terms(len - 1);
  std::vector<mpz_class> p;
  std::vector<__int128> q(len, 0);
  for (const auto& [e, v] : c) q[e] = v;
  bool fits = true;
  for (int k = 0; k < 7 && fits; ++k) fits = times_sparse_i128(q, c);
  if (fits) {
    p.reserve(len);
    for (__int128 v : q) p.push_back(to_mpz(v));
  } else {
    p = dense(c, len);
    for (int k = 0; k < 7; ++k) p = times_sparse(p, c);
  }

  auto table = std::make_shared<const std::vector<mpz_class>>(std::move(p));
  g_tau_cache[len] = table;
  return table;
}

std::vector<mpz_class> ramanujan_tau(std::size_t n_max) {
  auto table = tau_table(n_max);
  return {table->begin(), table->begin() + static_cast<std::ptrdiff_t>(n_max)};
}

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = a < 0 ? -a : a;
  b = b < 0 ? -b : b;
  while (b != 0) {
    const std::int64_t r = a % b;
    a = b;
    b = r;
  }
  return a;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t c) {
  if (c < 1) throw PreconditionError("mod_inverse: modulus must be >= 1");
  if (c == 1) return 0;
  std::int64_t r0 = c, r1 = ((a % c) + c) % c;
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
  }
  if (r0 != 1)
    throw PreconditionError("mod_inverse: gcd(" + std::to_string(a) + ", " + std::to_string(c) +
                            ") != 1");
  return ((s0 % c) + c) % c;
}

namespace {

std::int64_t reduce(std::int64_t a, std::int64_t c) { return ((a % c) + c) % c; }

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t c) {
  return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % c);
}

}  // namespace

double kloosterman_sum(const KloostermanQuery& q) {
  if (q.c < 1) throw PreconditionError("kloosterman_sum: modulus must be >= 1");
  const std::int64_t c = q.c;
  if (c == 1) return 1.0;
  const std::int64_t a = reduce(q.a, c), b = reduce(q.b, c);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(c);
  NeumaierSum re, im;
  for (std::int64_t x = 1; x < c; ++x) {
    if (gcd(x, c) != 1) continue;
    const std::int64_t xbar = mod_inverse(x, c);
    const std::int64_t k = (mulmod(a, x, c) + mulmod(b, xbar, c)) % c;
    const double angle = step * static_cast<double>(k);
    re.add(std::cos(angle));
    im.add(std::sin(angle));
  }
  if (std::abs(im.value()) > 1e-9)
    throw ConvergenceError("kloosterman_sum: imaginary residue " + std::to_string(im.value()) +
                           " exceeds 1e-9");
  return re.value();
}

KloostermanModulus::KloostermanModulus(std::int64_t c) : c_(c) {
  if (c < 1) throw PreconditionError("KloostermanModulus: modulus must be >= 1");
  if (c == 1) {
    units_ = {0};
    inverses_ = {0};
    cos_ = {1.0};
    return;
  }
  for (std::int64_t x = 1; x < c; ++x) {
    if (gcd(x, c) != 1) continue;
    units_.push_back(x);
    inverses_.push_back(mod_inverse(x, c));
  }
  cos_.resize(static_cast<std::size_t>(c));
  const double step = 2.0 * std::numbers::pi / static_cast<double>(c);
  for (std::int64_t k = 0; k < c; ++k) cos_[static_cast<std::size_t>(k)] = std::cos(step * k);
}

double KloostermanModulus::sum(std::int64_t a, std::int64_t b) const {
  const std::int64_t ar = reduce(a, c_), br = reduce(b, c_);
  NeumaierSum acc;
  for (std::size_t i = 0; i < units_.size(); ++i) {
    const std::int64_t k = (mulmod(ar, units_[i], c_) + mulmod(br, inverses_[i], c_)) % c_;
    acc.add(cos_[static_cast<std::size_t>(k)]);
  }
  return acc.value();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t n) {
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  std::vector<std::uint32_t> primes;
  for (std::uint32_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= n; j += i) composite[j] = true;
  }
  return primes;
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint32_t result = n;
  for (std::uint32_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

}  // namespace critline::arith

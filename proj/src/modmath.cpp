#include "qppinv/modmath.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>

#include "qppinv/errors.hpp"

namespace qppinv {

namespace {

constexpr u64 kTrialDivisionCeiling = 1'000'000;
constexpr u64 kSmallPrimeStrip = 1000;

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = mod_pow(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mod_mul(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho. n must be odd and composite.
u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto step = [&](u64 v) { return mod_add(mod_mul(v, v, n), c, n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    u64 r = 1;
    constexpr u64 m = 128;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        const u64 lim = std::min(m, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = mod_mul(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, std::vector<u64>& primes) {
  if (n == 1) return;
  if (is_prime(n)) {
    primes.push_back(n);
    return;
  }
  const u64 d = pollard_rho(n);
  split_into(d, primes);
  split_into(n / d, primes);
}

void strip_by_trial(u64& n, u64 limit, std::vector<u64>& primes) {
  for (u64 p = 2; p <= limit && p * p <= n; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i64 x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const i64 q = a / b;
    std::tie(a, b) = std::pair{b, a - q * b};
    std::tie(x0, x1) = std::pair{x1, x0 - q * x1};
    std::tie(y0, y1) = std::pair{y1, y0 - q * y1};
  }
  x = x0;
  y = y0;
  return a;
}

}  // namespace

Modulus::Modulus(u64 n) : value_(n) {
  if (n < 2 || n > kMaxModulus) {
    throw RangeError("modulus " + std::to_string(n) + " outside [2, 2^50]");
  }
  std::vector<u64> primes;
  u64 rest = n;
  if (n <= kTrialDivisionCeiling) {
    strip_by_trial(rest, n, primes);
    if (rest > 1) primes.push_back(rest);
  } else {
    strip_by_trial(rest, kSmallPrimeStrip, primes);
    split_into(rest, primes);
  }
  std::sort(primes.begin(), primes.end());
  for (u64 p : primes) {
    if (!factors_.empty() && factors_.back().prime == p) {
      ++factors_.back().exponent;
    } else {
      factors_.push_back({p, 1});
    }
  }
}

unsigned Modulus::exponent_of(u64 p) const noexcept {
  for (const auto& f : factors_) {
    if (f.prime == p) return f.exponent;
  }
  return 0;
}

unsigned Modulus::max_exponent() const noexcept {
  unsigned best = 0;
  for (const auto& f : factors_) best = std::max(best, f.exponent);
  return best;
}

u64 Modulus::radical() const noexcept {
  u64 r = 1;
  for (const auto& f : factors_) r *= f.prime;
  return r;
}

Modulus factorize(u64 n) { return Modulus(n); }

bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr std::array<u64, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kBases) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

std::vector<u64> CongruenceSolutionSet::all() const {
  std::vector<u64> out;
  out.reserve(gamma);
  for (u64 t = 0; t < gamma; ++t) out.push_back(at(t));
  return out;
}

u64 residue(i64 a, u64 n) noexcept {
  if (a >= 0) return static_cast<u64>(a) % n;
  const u64 m = static_cast<u64>(-(a + 1)) % n;  // avoids overflow at INT64_MIN
  return n - 1 - m;
}

std::optional<CongruenceSolutionSet> solve_linear_congruence(i64 alpha, i64 beta, u64 n) {
  const u64 a = residue(alpha, n);
  const u64 b = residue(beta, n);
  const u64 gamma = std::gcd(a, n);  // gcd(0, n) == n
  if (b % gamma != 0) return std::nullopt;
  const u64 step = n / gamma;
  CongruenceSolutionSet set;
  set.gamma = gamma;
  set.step = step;
  set.modulus = n;
  if (step == 1) {
    set.x0 = 0;
  } else {
    const u64 reduced_a = (a / gamma) % step;
    const u64 reduced_b = (b / gamma) % step;
    set.x0 = mod_mul(mod_inverse(static_cast<i64>(reduced_a), step), reduced_b, step);
  }
  return set;
}

u64 mod_inverse(i64 a, u64 n) {
  if (n == 1) return 0;
  const u64 r = residue(a, n);
  i64 x = 0, y = 0;
  const i64 g = ext_gcd(static_cast<i64>(r), static_cast<i64>(n), x, y);
  if (g != 1) {
    throw UnitError(std::to_string(r) + " is not a unit modulo " + std::to_string(n));
  }
  return residue(x, n);
}

u128 catalan(unsigned k) {
  if (k > 50) throw RangeError("Catalan numbers are provided for k <= 50 only");
  u128 c = 1;
  for (unsigned i = 1; i <= k; ++i) {
    // C_i = C_{i-1} * 2(2i-1) / (i+1); the product stays below 2^128 up to i = 50.
    c = c * (2 * (2 * i - 1)) / (i + 1);
  }
  return c;
}

u64 mod_pow(u64 a, u64 e, u64 n) noexcept {
  if (n == 1) return 0;
  u64 result = 1;
  a %= n;
  while (e > 0) {
    if (e & 1) result = mod_mul(result, a, n);
    a = mod_mul(a, a, n);
    e >>= 1;
  }
  return result;
}

u64 factorial_mod(unsigned k, u64 n) noexcept {
  u64 f = 1 % n;
  for (unsigned i = 2; i <= k && f != 0; ++i) f = mod_mul(f, i % n, n);
  return f;
}

unsigned legendre_valuation(u64 k, u64 p) noexcept {
  unsigned v = 0;
  while (k >= p) {
    k /= p;
    v += static_cast<unsigned>(k);
  }
  return v;
}

u64 factorial_gcd(unsigned k, const Modulus& n) noexcept {
  u64 g = 1;
  for (const auto& f : n.factors()) {
    const unsigned v = std::min(legendre_valuation(k, f.prime), f.exponent);
    for (unsigned i = 0; i < v; ++i) g *= f.prime;
  }
  return g;
}

}  // namespace qppinv

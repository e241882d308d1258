#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace qppinv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
__extension__ using u128 = unsigned __int128;

// Largest supported modulus. The Catalan closed form for e_k is only
// established for k <= 50, and every N <= 2^50 has max exponent <= 50.
inline constexpr u64 kMaxModulus = u64{1} << 50;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// A modulus N together with its prime factorization, primes ascending.
class Modulus {
 public:
  // Factorizes n. Throws RangeError unless 2 <= n <= 2^50.
  explicit Modulus(u64 n);

  u64 value() const noexcept { return value_; }
  const std::vector<PrimePower>& factors() const noexcept { return factors_; }

  // n_{N,p}; zero when p does not divide N.
  unsigned exponent_of(u64 p) const noexcept;
  unsigned max_exponent() const noexcept;
  // Product of the distinct primes of N.
  u64 radical() const noexcept;

  friend bool operator==(const Modulus& a, const Modulus& b) noexcept { return a.value_ == b.value_; }

 private:
  u64 value_;
  std::vector<PrimePower> factors_;
};

Modulus factorize(u64 n);

// Deterministic for all 64-bit inputs.
bool is_prime(u64 n);

// Solutions of alpha*x == beta (mod N): x0 + t*step for 0 <= t < gamma.
struct CongruenceSolutionSet {
  u64 x0 = 0;
  u64 gamma = 1;
  u64 step = 1;
  u64 modulus = 1;

  u64 size() const noexcept { return gamma; }
  u64 at(u64 t) const noexcept { return x0 + t * step; }
  bool contains(u64 x) const noexcept { return x < modulus && x % step == x0; }
  std::vector<u64> all() const;
};

// Inputs are reduced into [0, N) first, so negative alpha/beta are fine.
// Returns nullopt iff gcd(alpha, N) does not divide beta.
std::optional<CongruenceSolutionSet> solve_linear_congruence(i64 alpha, i64 beta, u64 n);

// Throws UnitError when gcd(a, N) != 1.
u64 mod_inverse(i64 a, u64 n);

// C_k for 0 <= k <= 50; throws RangeError above.
u128 catalan(unsigned k);

// Canonical residue of a signed value.
u64 residue(i64 a, u64 n) noexcept;

inline u64 mod_add(u64 a, u64 b, u64 n) noexcept {
  const u64 s = a + b;
  return s >= n ? s - n : s;
}

inline u64 mod_sub(u64 a, u64 b, u64 n) noexcept { return a >= b ? a - b : a + (n - b); }

inline u64 mod_neg(u64 a, u64 n) noexcept { return a == 0 ? 0 : n - a; }

// Operands must already be reduced. Products go through 128 bits unless
// they provably fit in 64.
inline u64 mod_mul(u64 a, u64 b, u64 n) noexcept {
  if (n <= (u64{1} << 32)) return (a * b) % n;
  return static_cast<u64>(static_cast<u128>(a) * b % n);
}

u64 mod_pow(u64 a, u64 e, u64 n) noexcept;

// k! mod N.
u64 factorial_mod(unsigned k, u64 n) noexcept;

// Exponent of p in k! (Legendre).
unsigned legendre_valuation(u64 k, u64 p) noexcept;

// gcd(k!, N) without forming k!.
u64 factorial_gcd(unsigned k, const Modulus& n) noexcept;

}  // namespace qppinv

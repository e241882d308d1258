#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "qppinv/matrix.hpp"
#include "qppinv/modmath.hpp"
#include "qppinv/polyring.hpp"

namespace qppinv {

// The individual conditions under which f1*x + f2*x^2 permutes Z_N.
// The first three apply when N = 2 * odd, the last two otherwise.
enum class QppClause {
  kSumOdd,                 // f1 + f2 odd
  kF1CoprimeToHalfN,       // gcd(f1, N/2) = 1
  kOddPrimesDivideF2,      // every odd prime of N divides f2
  kF1CoprimeToN,           // gcd(f1, N) = 1
  kAllPrimesDivideF2,      // every prime of N divides f2
};

std::string_view describe(QppClause clause) noexcept;

// First violated clause, or nullopt when (f1, f2) is a QPP over N.
std::optional<QppClause> qpp_violation(u64 f1, u64 f2, const Modulus& n);

bool is_qpp(u64 f1, u64 f2, const Modulus& n);

class QppError : public std::invalid_argument {
 public:
  explicit QppError(QppClause clause);
  QppClause clause() const noexcept { return clause_; }

 private:
  QppClause clause_;
};

// A validated quadratic permutation polynomial f1*x + f2*x^2 mod N.
struct Qpp {
  Modulus modulus;
  u64 f1 = 0;
  u64 f2 = 0;
  // Set by normalize(): when N = 2 * odd, f1 is guaranteed odd.
  bool normalized = false;

  // Reduces f1, f2 into [0, N) and validates. Throws QppError (or RangeError for N < 3).
  static Qpp make(i64 f1, i64 f2, const Modulus& n);

  u64 n() const noexcept { return modulus.value(); }
  PolyModN polynomial() const { return PolyModN(n(), {f1, f2}); }
};

// When N = 2 * odd and f1 is even, switches to the equivalent QPP
// (f1 + N/2, f2 + N/2), whose f1 + k*f2 are all units.
Qpp normalize(const Qpp& q);

// max_p n_{N,p}: no QPP over N needs an inverse of higher degree.
unsigned degree_bound(const Modulus& n) noexcept;

// (K+1)! * C_K as an exact integer, 1 <= K <= 25.
BigInt degree_condition_constant(unsigned K);

// (K+1)! * C_K * f2^K mod N with each factor reduced first, 1 <= K <= 50.
u64 degree_condition_residue(unsigned K, u64 f2, u64 n);

// Smallest K >= 1 with (K+1)! * C_K * f2^K == 0 mod N. Normalizes first.
unsigned least_inverse_degree(const Qpp& q);

// e_k = k! * C_{k-1} * (-f2)^{k-1} / prod_{m=1}^{2k-1} (f1 + m*f2), k = 1..K.
std::vector<u64> compute_e(const Qpp& q, unsigned K);

// K x K unit upper-triangular U of the factorization A = L*D*U.
ResidueMatrix compute_U(const Qpp& q, unsigned K);

namespace detail {
// compute_U without the K <= 50 cap, for full-size structural checks.
ResidueMatrix upper_factor(const Qpp& q, std::size_t size);
}  // namespace detail

// The reduced congruence system D*h == e, h == U*g.
struct TriangularSystem {
  Qpp qpp;  // normalized
  unsigned K = 0;
  std::vector<u64> d;  // d[k-1] = k! mod N
  ResidueMatrix u;
  std::vector<u64> e;
};

TriangularSystem build_system(const Qpp& q);

// h_k = C_{k-1} * (-f2)^{k-1} / prod_{m=1}^{2k-1} (f1 + m*f2); satisfies k! * h_k == e_k.
std::vector<u64> particular_h(const TriangularSystem& sys);

struct HSolutions {
  std::vector<std::vector<u64>> solutions;
  bool truncated = false;
};

// Every h with D*h == e, in lexicographic order of the per-row solution
// index, stopping after `limit` vectors.
HSolutions all_h(const TriangularSystem& sys, std::size_t limit);

// The unique g with U*g == h (mod n), solved bottom-up.
PolyModN back_substitute(const ResidueMatrix& u, std::span<const u64> h, u64 n);

inline constexpr std::size_t kDefaultEnumerationLimit = 4096;

struct InverseSolution {
  Qpp input;  // as given
  Qpp qpp;    // normalized; equivalent to input
  TriangularSystem system;
  std::vector<u64> h;  // particular h
  PolyModN particular;
  BigInt count;  // prod_{k=1}^{K} gcd(k!, N)
  std::vector<u64> tau_limits;  // tau_limits[k-1] = gcd(k!, N)

  unsigned K() const noexcept { return system.K; }
  bool normalization_changed() const noexcept { return input.f1 != qpp.f1 || input.f2 != qpp.f2; }
};

InverseSolution invert_qpp(const Qpp& q);

// Walks particular + zero_polynomial(tau) over the tau grid with tau in
// lexicographic order (tau_1 varies slowest). Single consumer.
class InverseEnumerator {
 public:
  InverseEnumerator(const InverseSolution& sol, std::size_t limit);

  std::optional<PolyModN> next();
  // True once the cap stopped the walk before the grid was exhausted.
  bool truncated() const noexcept { return truncated_; }
  std::size_t produced() const noexcept { return produced_; }

 private:
  u64 n_;
  PolyModN particular_;
  std::vector<u64> limits_;
  std::vector<std::vector<u64>> basis_;  // dense (N/gcd(k!,N)) * falling factorial k, index = power - 1
  std::vector<u64> taus_;
  std::size_t limit_;
  std::size_t produced_ = 0;
  bool exhausted_ = false;
  bool truncated_ = false;
};

struct InverseList {
  std::vector<PolyModN> inverses;
  bool truncated = false;
};

InverseList enumerate_inverses(const InverseSolution& sol, std::size_t limit = kDefaultEnumerationLimit);

// Membership in the least-degree inverse set without enumerating: degree at
// most K and (g - particular) is a zero polynomial.
bool is_least_degree_inverse(const InverseSolution& sol, const PolyModN& g);

}  // namespace qppinv

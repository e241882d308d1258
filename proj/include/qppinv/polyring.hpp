#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qppinv/modmath.hpp"

namespace qppinv {

using BigInt = boost::multiprecision::cpp_int;

// Constant-free polynomial g_1 x + g_2 x^2 + ... + g_K x^K over Z_N.
//
// Coefficients are kept reduced into [0, N) and trailing zeros are trimmed,
// so operator== is congruence (coefficientwise equality mod N). Use
// equivalent() for equality as functions on Z_N.
class PolyModN {
 public:
  // coeffs[0] is g_1. Values are reduced mod n.
  PolyModN(u64 n, std::vector<u64> coeffs);

  static PolyModN zero(u64 n) { return PolyModN(n, {}); }
  static PolyModN identity(u64 n) { return PolyModN(n, {1}); }

  u64 modulus() const noexcept { return modulus_; }
  // Largest k with g_k != 0; 0 for the zero polynomial.
  std::size_t degree() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  // g_k for k >= 1; zero past the degree.
  u64 coeff(std::size_t k) const noexcept { return k >= 1 && k <= coeffs_.size() ? coeffs_[k - 1] : 0; }
  std::span<const u64> coeffs() const noexcept { return coeffs_; }

  PolyModN& operator+=(const PolyModN& other);
  PolyModN& operator-=(const PolyModN& other);
  friend PolyModN operator+(PolyModN a, const PolyModN& b) { return a += b; }
  friend PolyModN operator-(PolyModN a, const PolyModN& b) { return a -= b; }

  friend bool operator==(const PolyModN&, const PolyModN&) = default;
  friend auto operator<=>(const PolyModN&, const PolyModN&) = default;

 private:
  void trim() noexcept;

  u64 modulus_;
  std::vector<u64> coeffs_;
};

// Horner evaluation; x must be in [0, N).
u64 eval(const PolyModN& p, u64 x) noexcept;

// outer(inner(x)) with coefficients reduced mod N; degree-reduced when the
// convolution reaches degree N. Throws ContractError on modulus mismatch.
PolyModN compose(const PolyModN& outer, const PolyModN& inner);

// Equivalent polynomial of degree < N, via subtracting multiples of
// x^{K-N} * x(x-1)...(x-N+1).
PolyModN reduce_degree(const PolyModN& p);

// True iff p vanishes on all of Z_N, decided from the K-th order forward
// differences at 0 (K = degree after reduction).
bool is_zero_function(const PolyModN& p);

// Same function on Z_N. Pointwise for N <= 10^6, otherwise by testing
// whether the difference is a zero polynomial.
bool equivalent(const PolyModN& p, const PolyModN& q);

// x(x-1)...(x-k+1) expanded mod n; k >= 1.
PolyModN falling_factorial(std::size_t k, u64 n);

// gcd(k!, N) for k = 1..K: the number of admissible values of tau_k.
std::vector<u64> tau_limits(unsigned K, const Modulus& n);

struct ZeroPolyParams {
  Modulus modulus;
  // taus[k-1] = tau_k, with 0 <= tau_k < gcd(k!, N). Degree bound K = taus.size().
  std::vector<u64> taus;
};

// sum_k (N / gcd(k!,N)) * tau_k * x(x-1)...(x-k+1). Throws ContractError
// when a tau is out of range.
PolyModN zero_polynomial(const ZeroPolyParams& params);

// prod_{k=1}^{K} gcd(k!, N); requires 1 <= K <= 50.
BigInt count_zero_polynomials(unsigned K, const Modulus& n);

// "g1*x + g2*x^2 + ..." with zero terms omitted; "0" for the zero polynomial.
std::string to_string(const PolyModN& p);

// Accepts the to_string form plus loose variants ("31x+290x^2", "x", "-3*x^2").
// Repeated powers accumulate. Throws ParseError.
PolyModN parse_polynomial(std::string_view text, u64 n);

}  // namespace qppinv

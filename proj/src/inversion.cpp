#include "qppinv/inversion.hpp"

#include <numeric>
#include <string>

#include "qppinv/errors.hpp"

namespace qppinv {

namespace {

bool single_factor_of_two(const Modulus& n) noexcept { return n.exponent_of(2) == 1; }

void require_normalized_form(const Qpp& q) {
  if (single_factor_of_two(q.modulus) && q.f1 % 2 == 0) {
    throw ContractError("QPP must be normalized (odd f1) when N = 2 * odd");
  }
}

void require_degree_in_range(unsigned K) {
  if (K < 1 || K > 50) throw RangeError("degree K = " + std::to_string(K) + " outside [1, 50]");
}

u64 inverse_or_invariant(u64 a, u64 n) {
  try {
    return mod_inverse(static_cast<i64>(a), n);
  } catch (const UnitError& e) {
    throw InvariantError(std::string("denominator product is not a unit: ") + e.what());
  }
}

// prod_{m=1}^{2k-1} (f1 + m*f2) for k = 1..K.
std::vector<u64> denominator_products(const Qpp& q, unsigned K) {
  const u64 n = q.n();
  std::vector<u64> out;
  out.reserve(K);
  u64 prod = 1 % n;
  u64 m = 1;
  for (unsigned k = 1; k <= K; ++k) {
    for (; m <= 2 * static_cast<u64>(k) - 1; ++m) prod = mod_mul(prod, mod_add(q.f1, mod_mul(m % n, q.f2, n), n), n);
    out.push_back(prod);
  }
  return out;
}

}  // namespace

std::string_view describe(QppClause clause) noexcept {
  switch (clause) {
    case QppClause::kSumOdd:
      return "f1 + f2 must be odd when N = 2 * odd";
    case QppClause::kF1CoprimeToHalfN:
      return "gcd(f1, N/2) must be 1 when N = 2 * odd";
    case QppClause::kOddPrimesDivideF2:
      return "every odd prime factor of N must divide f2 when N = 2 * odd";
    case QppClause::kF1CoprimeToN:
      return "gcd(f1, N) must be 1 when N is odd or divisible by 4";
    case QppClause::kAllPrimesDivideF2:
      return "every prime factor of N must divide f2 when N is odd or divisible by 4";
  }
  return "unknown clause";
}

std::optional<QppClause> qpp_violation(u64 f1, u64 f2, const Modulus& n) {
  const u64 nv = n.value();
  f1 %= nv;
  f2 %= nv;
  if (single_factor_of_two(n)) {
    if ((f1 + f2) % 2 == 0) return QppClause::kSumOdd;
    if (std::gcd(f1, nv / 2) != 1) return QppClause::kF1CoprimeToHalfN;
    for (const auto& pf : n.factors()) {
      if (pf.prime != 2 && f2 % pf.prime != 0) return QppClause::kOddPrimesDivideF2;
    }
    return std::nullopt;
  }
  if (std::gcd(f1, nv) != 1) return QppClause::kF1CoprimeToN;
  for (const auto& pf : n.factors()) {
    if (f2 % pf.prime != 0) return QppClause::kAllPrimesDivideF2;
  }
  return std::nullopt;
}

bool is_qpp(u64 f1, u64 f2, const Modulus& n) { return !qpp_violation(f1, f2, n).has_value(); }

QppError::QppError(QppClause clause)
    : std::invalid_argument("not a quadratic permutation polynomial: " + std::string(describe(clause))),
      clause_(clause) {}

Qpp Qpp::make(i64 f1, i64 f2, const Modulus& n) {
  if (n.value() < 3) throw RangeError("QPP modulus must be at least 3");
  Qpp q{n, residue(f1, n.value()), residue(f2, n.value()), false};
  if (auto clause = qpp_violation(q.f1, q.f2, n)) throw QppError(*clause);
  return q;
}

Qpp normalize(const Qpp& q) {
  Qpp out = q;
  if (single_factor_of_two(q.modulus) && q.f1 % 2 == 0) {
    const u64 half = q.n() / 2;
    out.f1 = mod_add(q.f1, half, q.n());
    out.f2 = mod_add(q.f2, half, q.n());
  }
  out.normalized = true;
  return out;
}

unsigned degree_bound(const Modulus& n) noexcept { return n.max_exponent(); }

BigInt degree_condition_constant(unsigned K) {
  if (K < 1 || K > 25) throw RangeError("exact criterion constant is provided for 1 <= K <= 25");
  BigInt value = 1;
  for (unsigned i = 2; i <= K + 1; ++i) value *= i;
  const u128 c = catalan(K);
  value *= BigInt(static_cast<u64>(c >> 64)) << 64 | BigInt(static_cast<u64>(c));
  return value;
}

u64 degree_condition_residue(unsigned K, u64 f2, u64 n) {
  require_degree_in_range(K);
  const u64 fact = factorial_mod(K + 1, n);
  const u64 cat = static_cast<u64>(catalan(K) % n);
  return mod_mul(mod_mul(fact, cat, n), mod_pow(f2 % n, K, n), n);
}

unsigned least_inverse_degree(const Qpp& q) {
  const Qpp qn = q.normalized ? q : normalize(q);
  for (unsigned K = 1; K <= 50; ++K) {
    if (degree_condition_residue(K, qn.f2, qn.n()) == 0) return K;
  }
  throw InvariantError("degree criterion unmet through K = 50 for N = " + std::to_string(qn.n()));
}

std::vector<u64> compute_e(const Qpp& q, unsigned K) {
  require_degree_in_range(K);
  require_normalized_form(q);
  const u64 n = q.n();
  const auto denominators = denominator_products(q, K);
  const u64 neg_f2 = mod_neg(q.f2, n);
  std::vector<u64> e;
  e.reserve(K);
  u64 sign_power = 1 % n;  // (-f2)^{k-1}
  for (unsigned k = 1; k <= K; ++k) {
    if (k > 1) sign_power = mod_mul(sign_power, neg_f2, n);
    const u64 numerator = mod_mul(mod_mul(factorial_mod(k, n), static_cast<u64>(catalan(k - 1) % n), n), sign_power, n);
    e.push_back(mod_mul(numerator, inverse_or_invariant(denominators[k - 1], n), n));
  }
  return e;
}

namespace detail {

ResidueMatrix upper_factor(const Qpp& q, std::size_t size) {
  const u64 n = q.n();
  // a_i = i*f1 + i^2*f2, the evaluation point of row i.
  std::vector<u64> point(size + 1, 0);
  for (std::size_t i = 1; i <= size; ++i) {
    const u64 ir = i % n;
    point[i] = mod_add(mod_mul(ir, q.f1, n), mod_mul(mod_mul(ir, ir, n), q.f2, n), n);
  }

  ResidueMatrix u(size, size);
  std::vector<u64> row(size);
  for (std::size_t i = 1; i <= size; ++i) {
    // Row vector q^(i) = [1, a_i, a_i^2, ...]. W^(k) is strictly upper
    // triangular, so the leading j entries of q^(i) W^(i-1)...W^(1) do not
    // depend on the matrix size and one full-width product serves all j.
    u64 p = 1 % n;
    for (std::size_t t = 0; t < size; ++t) {
      row[t] = p;
      p = mod_mul(p, point[i], n);
    }
    for (std::size_t k = i - 1; k >= 1; --k) {
      // (v W^(k))_c = sum_{m < c} v_m a_k^{c-m-1}, accumulated left to right.
      u64 acc = 0;
      for (std::size_t c = 0; c < size; ++c) {
        const u64 prev = row[c];
        row[c] = acc;
        acc = mod_add(mod_mul(acc, point[k], n), prev, n);
      }
    }
    u(i - 1, i - 1) = 1 % n;
    for (std::size_t j = i + 1; j <= size; ++j) u(i - 1, j - 1) = row[j - 1];
  }
  return u;
}

}  // namespace detail

ResidueMatrix compute_U(const Qpp& q, unsigned K) {
  require_degree_in_range(K);
  return detail::upper_factor(q, K);
}

TriangularSystem build_system(const Qpp& q) {
  const Qpp nq = q.normalized ? q : normalize(q);
  const u64 n = nq.n();
  const unsigned K = least_inverse_degree(nq);
  std::vector<u64> d;
  d.reserve(K);
  for (unsigned k = 1; k <= K; ++k) d.push_back(factorial_mod(k, n));
  TriangularSystem sys{nq, K, std::move(d), compute_U(nq, K), compute_e(nq, K)};
  if (sys.e.back() == 0) throw InvariantError("e_K vanishes at the least degree");
  for (unsigned k = 1; k <= K; ++k) {
    if (!solve_linear_congruence(static_cast<i64>(sys.d[k - 1]), static_cast<i64>(sys.e[k - 1]), n)) {
      throw InvariantError("congruence " + std::to_string(k) + "! * h == e_" + std::to_string(k) + " has no solution");
    }
  }
  return sys;
}

std::vector<u64> particular_h(const TriangularSystem& sys) {
  const Qpp& q = sys.qpp;
  const u64 n = q.n();
  const auto denominators = denominator_products(q, sys.K);
  const u64 neg_f2 = mod_neg(q.f2, n);
  std::vector<u64> h;
  h.reserve(sys.K);
  u64 sign_power = 1 % n;
  for (unsigned k = 1; k <= sys.K; ++k) {
    if (k > 1) sign_power = mod_mul(sign_power, neg_f2, n);
    const u64 numerator = mod_mul(static_cast<u64>(catalan(k - 1) % n), sign_power, n);
    h.push_back(mod_mul(numerator, inverse_or_invariant(denominators[k - 1], n), n));
  }
  return h;
}

HSolutions all_h(const TriangularSystem& sys, std::size_t limit) {
  const u64 n = sys.qpp.n();
  std::vector<CongruenceSolutionSet> rows;
  rows.reserve(sys.K);
  for (unsigned k = 1; k <= sys.K; ++k) {
    auto set = solve_linear_congruence(static_cast<i64>(sys.d[k - 1]), static_cast<i64>(sys.e[k - 1]), n);
    if (!set) throw InvariantError("unsolvable diagonal congruence at k = " + std::to_string(k));
    rows.push_back(*set);
  }

  HSolutions out;
  std::vector<u64> index(sys.K, 0);
  while (true) {
    if (out.solutions.size() == limit) {
      out.truncated = true;
      return out;
    }
    std::vector<u64> h(sys.K);
    for (unsigned k = 0; k < sys.K; ++k) h[k] = rows[k].at(index[k]);
    out.solutions.push_back(std::move(h));

    std::size_t pos = sys.K;
    while (pos > 0) {
      --pos;
      if (++index[pos] < rows[pos].size()) break;
      index[pos] = 0;
      if (pos == 0) return out;
    }
    if (sys.K == 0) return out;
  }
}

PolyModN back_substitute(const ResidueMatrix& u, std::span<const u64> h, u64 n) {
  const std::size_t K = h.size();
  if (u.rows() != K || u.cols() != K) throw ContractError("U and h sizes disagree");
  std::vector<u64> g(K, 0);
  for (std::size_t k = K; k-- > 0;) {
    u64 acc = h[k] % n;
    for (std::size_t m = k + 1; m < K; ++m) acc = mod_sub(acc, mod_mul(u(k, m), g[m], n), n);
    g[k] = acc;
  }
  return PolyModN(n, std::move(g));
}

InverseSolution invert_qpp(const Qpp& q) {
  TriangularSystem sys = build_system(q);
  std::vector<u64> h = particular_h(sys);
  PolyModN particular = back_substitute(sys.u, h, sys.qpp.n());
  if (particular.degree() != sys.K) throw InvariantError("particular inverse does not have degree K");
  BigInt count = count_zero_polynomials(sys.K, sys.qpp.modulus);
  std::vector<u64> limits = tau_limits(sys.K, sys.qpp.modulus);
  Qpp normalized = sys.qpp;
  return InverseSolution{q,
                         std::move(normalized),
                         std::move(sys),
                         std::move(h),
                         std::move(particular),
                         std::move(count),
                         std::move(limits)};
}

InverseEnumerator::InverseEnumerator(const InverseSolution& sol, std::size_t limit)
    : n_(sol.qpp.n()),
      particular_(sol.particular),
      limits_(sol.tau_limits),
      taus_(sol.tau_limits.size(), 0),
      limit_(limit) {
  basis_.reserve(limits_.size());
  for (std::size_t k = 1; k <= limits_.size(); ++k) {
    const PolyModN ff = falling_factorial(k, n_);
    const u64 scale = n_ / limits_[k - 1];
    std::vector<u64> scaled(ff.coeffs().begin(), ff.coeffs().end());
    for (auto& c : scaled) c = mod_mul(c, scale % n_, n_);
    basis_.push_back(std::move(scaled));
  }
}

std::optional<PolyModN> InverseEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (produced_ == limit_) {
    truncated_ = true;
    return std::nullopt;
  }
  std::vector<u64> coeffs(particular_.coeffs().begin(), particular_.coeffs().end());
  for (std::size_t k = 0; k < taus_.size(); ++k) {
    if (taus_[k] == 0) continue;
    const auto& b = basis_[k];
    if (coeffs.size() < b.size()) coeffs.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) coeffs[i] = mod_add(coeffs[i], mod_mul(taus_[k], b[i], n_), n_);
  }
  ++produced_;

  std::size_t pos = taus_.size();
  exhausted_ = true;
  while (pos > 0) {
    --pos;
    if (++taus_[pos] < limits_[pos]) {
      exhausted_ = false;
      break;
    }
    taus_[pos] = 0;
  }
  return PolyModN(n_, std::move(coeffs));
}

InverseList enumerate_inverses(const InverseSolution& sol, std::size_t limit) {
  if (limit == 0) throw ContractError("enumeration limit must be at least 1");
  InverseEnumerator it(sol, limit);
  InverseList out;
  while (auto g = it.next()) out.inverses.push_back(std::move(*g));
  out.truncated = it.truncated();
  return out;
}

bool is_least_degree_inverse(const InverseSolution& sol, const PolyModN& g) {
  if (g.modulus() != sol.qpp.n() || g.degree() > sol.K()) return false;
  return is_zero_function(g - sol.particular);
}

}  // namespace qppinv

#include "qppinv/polyring.hpp"

#include <cctype>
#include <sstream>

#include "qppinv/errors.hpp"

namespace qppinv {

namespace {

constexpr u64 kPointwiseCeiling = 1'000'000;

// Dense polynomial with index == power, constant term included.
using Dense = std::vector<u64>;

void trim_dense(Dense& d) {
  while (!d.empty() && d.back() == 0) d.pop_back();
}

Dense multiply_dense(const Dense& a, const Dense& b, u64 n) {
  if (a.empty() || b.empty()) return {};
  Dense c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = mod_add(c[i + j], mod_mul(a[i], b[j], n), n);
  }
  trim_dense(c);
  return c;
}

// x(x-1)...(x-k+1) in dense form.
Dense falling_dense(std::size_t k, u64 n) {
  Dense d = {0, 1 % n};
  for (std::size_t m = 1; m < k; ++m) d = multiply_dense(d, {mod_neg(m % n, n), 1 % n}, n);
  return d;
}

// Lowers the degree below n; every step subtracts a zero polynomial.
void reduce_dense(Dense& d, u64 n) {
  trim_dense(d);
  if (d.size() <= n) return;
  const Dense vanishing = falling_dense(n, n);  // monic, degree n
  while (d.size() > n) {
    const std::size_t deg = d.size() - 1;
    const u64 lead = d[deg];
    const std::size_t shift = deg - n;
    for (std::size_t i = 0; i <= n; ++i) {
      d[shift + i] = mod_sub(d[shift + i], mod_mul(lead, vanishing[i], n), n);
    }
    trim_dense(d);
  }
}

Dense to_dense(const PolyModN& p) {
  Dense d(p.degree() + 1, 0);
  for (std::size_t k = 1; k <= p.degree(); ++k) d[k] = p.coeff(k);
  return d;
}

PolyModN from_dense(const Dense& d, u64 n) {
  if (d.size() <= 1) return PolyModN::zero(n);
  return PolyModN(n, std::vector<u64>(d.begin() + 1, d.end()));
}

void require_same_modulus(const PolyModN& a, const PolyModN& b) {
  if (a.modulus() != b.modulus()) {
    throw ContractError("polynomials over different moduli (" + std::to_string(a.modulus()) + " vs " +
                        std::to_string(b.modulus()) + ")");
  }
}

}  // namespace

PolyModN::PolyModN(u64 n, std::vector<u64> coeffs) : modulus_(n), coeffs_(std::move(coeffs)) {
  if (n == 0) throw ContractError("modulus must be positive");
  for (auto& c : coeffs_) c %= n;
  trim();
}

void PolyModN::trim() noexcept {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

PolyModN& PolyModN::operator+=(const PolyModN& other) {
  require_same_modulus(*this, other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] = mod_add(coeffs_[i], other.coeffs_[i], modulus_);
  trim();
  return *this;
}

PolyModN& PolyModN::operator-=(const PolyModN& other) {
  require_same_modulus(*this, other);
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) coeffs_[i] = mod_sub(coeffs_[i], other.coeffs_[i], modulus_);
  trim();
  return *this;
}

u64 eval(const PolyModN& p, u64 x) noexcept {
  const u64 n = p.modulus();
  const auto c = p.coeffs();
  u64 acc = 0;
  for (std::size_t i = c.size(); i-- > 0;) acc = mod_mul(mod_add(acc, c[i], n), x, n);
  return acc;
}

PolyModN compose(const PolyModN& outer, const PolyModN& inner) {
  require_same_modulus(outer, inner);
  const u64 n = outer.modulus();
  if (outer.is_zero() || inner.is_zero()) return PolyModN::zero(n);
  const Dense in = to_dense(inner);
  const std::size_t top = outer.degree();
  Dense acc = {outer.coeff(top)};
  for (std::size_t k = top - 1; k >= 1; --k) {
    acc = multiply_dense(acc, in, n);
    reduce_dense(acc, n);
    if (acc.empty()) acc.push_back(0);
    acc[0] = mod_add(acc[0], outer.coeff(k), n);
  }
  acc = multiply_dense(acc, in, n);
  reduce_dense(acc, n);
  return from_dense(acc, n);
}

PolyModN reduce_degree(const PolyModN& p) {
  if (p.degree() < p.modulus()) return p;
  Dense d = to_dense(p);
  reduce_dense(d, p.modulus());
  return from_dense(d, p.modulus());
}

bool is_zero_function(const PolyModN& p) {
  const PolyModN r = reduce_degree(p);
  const u64 n = r.modulus();
  const std::size_t k = r.degree();
  // z_0(x) = z(x) for x = 0..K, then z_j(x) = z_{j-1}(x+1) - z_{j-1}(x).
  std::vector<u64> level(k + 1);
  for (std::size_t x = 0; x <= k; ++x) level[x] = eval(r, x % n);
  for (std::size_t j = 0; j <= k; ++j) {
    if (level[0] != 0) return false;
    for (std::size_t x = 0; x + 1 < level.size(); ++x) level[x] = mod_sub(level[x + 1], level[x], n);
    level.pop_back();
  }
  return true;
}

bool equivalent(const PolyModN& p, const PolyModN& q) {
  require_same_modulus(p, q);
  const u64 n = p.modulus();
  if (p == q) return true;
  if (n <= kPointwiseCeiling) {
    for (u64 x = 0; x < n; ++x) {
      if (eval(p, x) != eval(q, x)) return false;
    }
    return true;
  }
  return is_zero_function(p - q);
}

PolyModN falling_factorial(std::size_t k, u64 n) {
  if (k == 0) throw ContractError("falling factorial of order 0 has a constant term");
  return from_dense(falling_dense(k, n), n);
}

std::vector<u64> tau_limits(unsigned K, const Modulus& n) {
  std::vector<u64> out;
  out.reserve(K);
  for (unsigned k = 1; k <= K; ++k) out.push_back(factorial_gcd(k, n));
  return out;
}

PolyModN zero_polynomial(const ZeroPolyParams& params) {
  const u64 n = params.modulus.value();
  const auto limits = tau_limits(static_cast<unsigned>(params.taus.size()), params.modulus);
  Dense acc;
  Dense ff = {0, 1 % n};
  for (std::size_t k = 1; k <= params.taus.size(); ++k) {
    if (k > 1) ff = multiply_dense(ff, {mod_neg((k - 1) % n, n), 1 % n}, n);
    const u64 tau = params.taus[k - 1];
    const u64 limit = limits[k - 1];
    if (tau >= limit) {
      throw ContractError("tau_" + std::to_string(k) + " = " + std::to_string(tau) + " must be below gcd(" +
                          std::to_string(k) + "!, N) = " + std::to_string(limit));
    }
    if (tau == 0) continue;
    const u64 scale = mod_mul(n / limit, tau, n);
    if (acc.size() < ff.size()) acc.resize(ff.size(), 0);
    for (std::size_t i = 0; i < ff.size(); ++i) acc[i] = mod_add(acc[i], mod_mul(scale, ff[i], n), n);
  }
  trim_dense(acc);
  return from_dense(acc, n);
}

BigInt count_zero_polynomials(unsigned K, const Modulus& n) {
  if (K < 1 || K > 50) throw RangeError("zero-polynomial count requires 1 <= K <= 50");
  BigInt count = 1;
  for (u64 g : tau_limits(K, n)) count *= g;
  return count;
}

std::string to_string(const PolyModN& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 1; k <= p.degree(); ++k) {
    const u64 c = p.coeff(k);
    if (c == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << c << "*x";
    if (k > 1) os << '^' << k;
  }
  return os.str();
}

PolyModN parse_polynomial(std::string_view text, u64 n) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_number = [&](u64& out) {
    const std::size_t start = pos;
    u128 v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<unsigned>(text[pos] - '0');
      if (v > ~u64{0}) throw ParseError("number too large in polynomial '" + std::string(text) + "'", 0);
      ++pos;
    }
    if (pos == start) return false;
    out = static_cast<u64>(v);
    return true;
  };
  auto fail = [&](const std::string& why) -> void {
    throw ParseError(why + " at offset " + std::to_string(pos) + " in '" + std::string(text) + "'", 0);
  };

  std::vector<u64> coeffs;
  bool any_term = false;
  skip_ws();
  if (pos == text.size()) fail("empty polynomial");
  while (pos < text.size()) {
    bool negative = false;
    if (any_term) {
      if (text[pos] == '+') {
        ++pos;
      } else if (text[pos] == '-') {
        negative = true;
        ++pos;
      } else {
        fail("expected '+' or '-'");
      }
      skip_ws();
    } else if (text[pos] == '-' || text[pos] == '+') {
      negative = text[pos] == '-';
      ++pos;
      skip_ws();
    }

    u64 c = 1;
    const bool has_number = read_number(c);
    skip_ws();
    u64 power = 0;
    if (pos < text.size() && text[pos] == '*') {
      if (!has_number) fail("'*' without a coefficient");
      ++pos;
      skip_ws();
      if (pos >= text.size() || text[pos] != 'x') fail("expected 'x' after '*'");
    }
    if (pos < text.size() && text[pos] == 'x') {
      ++pos;
      power = 1;
      skip_ws();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip_ws();
        if (!read_number(power) || power == 0) fail("expected a positive exponent");
        skip_ws();
      }
    } else if (!has_number) {
      fail("expected a term");
    }

    const u64 value = negative ? mod_neg(c % n, n) : c % n;
    if (power == 0) {
      if (value != 0) fail("constant terms are not allowed");
    } else {
      if (power > (u64{1} << 20)) fail("exponent too large");
      if (coeffs.size() < power) coeffs.resize(power, 0);
      coeffs[power - 1] = mod_add(coeffs[power - 1], value, n);
    }
    any_term = true;
    skip_ws();
  }
  return PolyModN(n, std::move(coeffs));
}

}  // namespace qppinv

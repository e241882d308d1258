#pragma once

// Independent helpers shared by the unit and acceptance tests. They use
// plain trial division and exact integers, never the library's solver.

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace qppinv_test {

using u64 = std::uint64_t;
__extension__ using u128 = unsigned __int128;
using boost::multiprecision::cpp_int;

inline std::vector<std::pair<u64, unsigned>> trial_factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  for (a %= m; e; e >>= 1, a = mulmod(a, a, m)) {
    if (e & 1) r = mulmod(r, a, m);
  }
  return r;
}

// Unit inverse mod m by Euler's theorem over the factored modulus.
inline u64 inv_unit(u64 a, u64 m, const std::vector<std::pair<u64, unsigned>>& factors) {
  u64 phi = m;
  for (const auto& [p, e] : factors) phi = phi / p * (p - 1);
  return powmod(a, phi - 1, m);
}

// Decides whether A*x == rhs (mod p^a) has a solution, by elimination with
// full pivoting on the entry of least p-adic valuation. Column operations
// needed to diagonalize never touch rhs, so they are skipped.
inline bool solvable_mod_prime_power(std::vector<std::vector<u64>> A, std::vector<u64> rhs, u64 p, unsigned a) {
  u64 q = 1;
  for (unsigned i = 0; i < a; ++i) q *= p;
  const std::vector<std::pair<u64, unsigned>> qf{{p, a}};
  auto valuation = [&](u64 v) {
    if (v == 0) return a;
    unsigned k = 0;
    while (v % p == 0) {
      v /= p;
      ++k;
    }
    return k;
  };
  const std::size_t rows = A.size();
  const std::size_t cols = rows ? A[0].size() : 0;
  std::vector<bool> row_used(rows, false), col_used(cols, false);
  for (std::size_t step = 0; step < cols; ++step) {
    unsigned best = a;
    std::size_t pr = 0, pc = 0;
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r]) continue;
      for (std::size_t c = 0; c < cols; ++c) {
        if (col_used[c]) continue;
        const unsigned v = valuation(A[r][c] % q);
        if (v < best) {
          best = v;
          pr = r;
          pc = c;
        }
      }
    }
    if (best == a) break;
    row_used[pr] = col_used[pc] = true;
    u64 scale = 1;
    for (unsigned i = 0; i < best; ++i) scale *= p;
    const u64 unit_inv = inv_unit(A[pr][pc] / scale, q, qf);
    for (std::size_t r = 0; r < rows; ++r) {
      if (row_used[r] || A[r][pc] % q == 0) continue;
      const u64 factor = mulmod(A[r][pc] / scale, unit_inv, q);
      for (std::size_t c = 0; c < cols; ++c) A[r][c] = (A[r][c] + q - mulmod(factor, A[pr][c], q)) % q;
      rhs[r] = (rhs[r] + q - mulmod(factor, rhs[pr], q)) % q;
    }
    if (rhs[pr] % scale != 0) return false;
  }
  for (std::size_t r = 0; r < rows; ++r) {
    if (!row_used[r] && rhs[r] % q != 0) return false;
  }
  return true;
}

// Whether some g_1 x + ... + g_d x^d satisfies g(f(x)) == x on all of Z_n,
// with f = f1 x + f2 x^2. Decided per prime power and combined by CRT.
inline bool inverse_of_degree_exists(u64 n, u64 f1, u64 f2, unsigned d) {
  if (d == 0) return n == 1;
  for (const auto& [p, e] : trial_factor(n)) {
    u64 q = 1;
    for (unsigned i = 0; i < e; ++i) q *= p;
    std::vector<std::vector<u64>> A;
    std::vector<u64> rhs;
    for (u64 x = 0; x < n; ++x) {
      const u64 y = (mulmod(f1, x, q) + mulmod(f2, mulmod(x, x, q), q)) % q;
      std::vector<u64> row(d);
      u64 power = 1;
      for (unsigned j = 0; j < d; ++j) {
        power = mulmod(power, y, q);
        row[j] = power;
      }
      A.push_back(std::move(row));
      rhs.push_back(x % q);
    }
    if (!solvable_mod_prime_power(std::move(A), std::move(rhs), p, e)) return false;
  }
  return true;
}

// l_{i,j} = C(i,j) * prod_{k=i}^{i+j-1} (f1 + k f2), for 1 <= j <= i <= K,
// with exact binomials. Row-major K x K.
inline std::vector<std::vector<u64>> leading_lower(u64 n, u64 f1, u64 f2, unsigned K) {
  std::vector<std::vector<u64>> l(K, std::vector<u64>(K, 0));
  for (unsigned i = 1; i <= K; ++i) {
    cpp_int binom = 1;
    for (unsigned j = 1; j <= i; ++j) {
      binom = binom * (i - j + 1) / j;
      cpp_int prod = binom;
      for (unsigned k = i; k <= i + j - 1; ++k) prod = prod * (cpp_int(f1) + cpp_int(k) * f2) % n;
      l[i - 1][j - 1] = static_cast<u64>(prod % n);
    }
  }
  return l;
}

}  // namespace qppinv_test

#include "qppinv/oracle.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "qppinv/errors.hpp"

namespace qppinv::oracle {

namespace {

bool inverse_on_range(const PolyModN& f, const PolyModN& g, u64 begin, u64 end) {
  for (u64 x = begin; x < end; ++x) {
    if (eval(g, eval(f, x)) != x) return false;
  }
  return true;
}

// Binomial coefficients mod n for 0 <= j <= i <= size.
ResidueMatrix pascal(std::size_t size, u64 n) {
  ResidueMatrix c(size + 1, size + 1);
  for (std::size_t i = 0; i <= size; ++i) {
    c(i, 0) = 1 % n;
    for (std::size_t j = 1; j <= i; ++j) c(i, j) = mod_add(c(i - 1, j - 1), i - 1 >= j ? c(i - 1, j) : 0, n);
  }
  return c;
}

}  // namespace

bool is_permutation(const PolyModN& f) {
  const u64 n = f.modulus();
  if (n > kFullCheckCeiling) {
    throw CapabilityError("full permutation check supports N <= " + std::to_string(kFullCheckCeiling));
  }
  std::vector<bool> seen(n, false);
  for (u64 x = 0; x < n; ++x) {
    const u64 y = eval(f, x);
    if (seen[y]) return false;
    seen[y] = true;
  }
  return true;
}

bool verify_inverse(const PolyModN& f, const PolyModN& g, Sampling sampling, unsigned workers) {
  if (f.modulus() != g.modulus()) throw ContractError("verify_inverse: modulus mismatch");
  const u64 n = f.modulus();

  if (sampling.mode == Sampling::Mode::kSample) {
    std::mt19937_64 rng(sampling.seed);
    std::uniform_int_distribution<u64> pick(0, n - 1);
    for (std::size_t i = 0; i < sampling.count; ++i) {
      const u64 x = pick(rng);
      if (eval(g, eval(f, x)) != x) return false;
    }
    return true;
  }

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<u64>(workers, std::max<u64>(1, n / 65536)));
  if (workers <= 1) return inverse_on_range(f, g, 0, n);

  std::vector<char> results(workers, 0);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const u64 chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const u64 begin = std::min(n, w * chunk);
    const u64 end = std::min(n, begin + chunk);
    pool.emplace_back([&, w, begin, end] { results[w] = inverse_on_range(f, g, begin, end) ? 1 : 0; });
  }
  for (auto& t : pool) t.join();
  return std::all_of(results.begin(), results.end(), [](char r) { return r != 0; });
}

std::vector<PolyModN> brute_force_inverses(const PolyModN& f, unsigned max_degree) {
  const u64 n = f.modulus();
  if (n > 16 || max_degree > 3 || max_degree == 0) {
    throw CapabilityError("brute-force inverse search needs N <= 16 and 1 <= max_degree <= 3");
  }
  std::vector<u64> image(n);
  for (u64 x = 0; x < n; ++x) image[x] = eval(f, x);

  std::vector<PolyModN> found;
  std::vector<u64> coeffs(max_degree, 0);
  while (true) {
    const PolyModN g(n, coeffs);
    bool ok = true;
    for (u64 x = 0; x < n && ok; ++x) ok = eval(g, image[x]) == x;
    if (ok) found.push_back(g);

    std::size_t pos = 0;
    while (pos < max_degree && ++coeffs[pos] == n) coeffs[pos++] = 0;
    if (pos == max_degree) break;
  }
  std::sort(found.begin(), found.end());
  return found;
}

FullSystem build_full_system(const Qpp& input) {
  const u64 n = input.n();
  if (n > kFullSystemCeiling) {
    throw CapabilityError("full system construction supports N <= " + std::to_string(kFullSystemCeiling));
  }
  const Qpp q = normalize(input);
  const std::size_t size = n - 1;
  FullSystem sys;
  sys.modulus = n;
  sys.a = ResidueMatrix(size, size);
  sys.l = ResidueMatrix(size, size);
  sys.d = ResidueMatrix(size, size);
  sys.b.resize(size);

  const ResidueMatrix binom = pascal(size, n);
  for (std::size_t i = 1; i <= size; ++i) {
    const u64 point = mod_add(mod_mul(i % n, q.f1, n), mod_mul(mod_mul(i % n, i % n, n), q.f2, n), n);
    u64 power = 1 % n;
    for (std::size_t j = 1; j <= size; ++j) {
      power = mod_mul(power, point, n);
      sys.a(i - 1, j - 1) = power;
    }
    for (std::size_t j = 1; j <= i; ++j) {
      u64 prod = binom(i, j);
      for (std::size_t k = i; k <= i + j - 1; ++k) prod = mod_mul(prod, mod_add(q.f1, mod_mul(k % n, q.f2, n), n), n);
      sys.l(i - 1, j - 1) = prod;
    }
    sys.d(i - 1, i - 1) = factorial_mod(static_cast<unsigned>(i), n);
    sys.b[i - 1] = i % n;
  }
  sys.u = detail::upper_factor(q, size);
  return sys;
}

LduCheck check_ldu(const FullSystem& sys) {
  const u64 n = sys.modulus;
  const std::size_t size = sys.a.rows();
  for (std::size_t i = 0; i < size; ++i) {
    if (std::gcd(sys.l(i, i), n) != 1) {
      return {false, i + 1, i + 1, "diagonal entry of L is not a unit"};
    }
  }
  const ResidueMatrix ldu = multiply(multiply(sys.l, sys.d, n), sys.u, n);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (ldu(i, j) != sys.a(i, j)) {
        return {false, i + 1, j + 1,
                "A = " + std::to_string(sys.a(i, j)) + " but (L*D*U) = " + std::to_string(ldu(i, j))};
      }
    }
  }
  return {};
}

std::vector<u64> forward_substitute(const ResidueMatrix& l, const std::vector<u64>& b, u64 n) {
  const std::size_t size = b.size();
  std::vector<u64> x(size, 0);
  for (std::size_t i = 0; i < size; ++i) {
    u64 acc = b[i] % n;
    for (std::size_t j = 0; j < i; ++j) acc = mod_sub(acc, mod_mul(l(i, j), x[j], n), n);
    x[i] = mod_mul(acc, mod_inverse(static_cast<i64>(l(i, i)), n), n);
  }
  return x;
}

}  // namespace qppinv::oracle

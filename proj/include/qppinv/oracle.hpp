#pragma once

// Brute-force ground truth used to check the inversion machinery. Nothing
// here goes through the triangular-system solver.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qppinv/inversion.hpp"
#include "qppinv/matrix.hpp"
#include "qppinv/polyring.hpp"

namespace qppinv::oracle {

inline constexpr u64 kFullCheckCeiling = 10'000'000;

// Bijectivity of x -> f(x) on Z_N via an occupancy table.
// Throws CapabilityError for N above kFullCheckCeiling.
bool is_permutation(const PolyModN& f);

struct Sampling {
  enum class Mode { kFull, kSample };

  Mode mode = Mode::kFull;
  std::size_t count = 0;
  u64 seed = 0x5eed;

  static Sampling full() { return {}; }
  static Sampling sample(std::size_t count, u64 seed = 0x5eed) { return {Mode::kSample, count, seed}; }
};

// g(f(x)) == x on all of Z_N (full) or on `count` uniform points (sample).
// Full mode splits the domain over `workers` threads (0 = hardware
// concurrency) and AND-reduces the per-range results.
bool verify_inverse(const PolyModN& f, const PolyModN& g, Sampling sampling = Sampling::full(), unsigned workers = 0);

// All g of degree <= max_degree with g(f(x)) == x on Z_N, found by
// exhaustive search over coefficient vectors. Requires N <= 16 and
// max_degree <= 3; throws CapabilityError otherwise.
std::vector<PolyModN> brute_force_inverses(const PolyModN& f, unsigned max_degree);

// The (N-1) x (N-1) system A*g == b and its factors, built entry by entry.
struct FullSystem {
  u64 modulus = 0;
  ResidueMatrix a;
  ResidueMatrix l;
  ResidueMatrix d;
  ResidueMatrix u;
  std::vector<u64> b;
};

inline constexpr u64 kFullSystemCeiling = 64;

// Requires N <= 64. The QPP is normalized first so that L has unit diagonal.
FullSystem build_full_system(const Qpp& q);

struct LduCheck {
  bool ok = true;
  // 1-based coordinates of the first failing entry.
  std::size_t row = 0;
  std::size_t col = 0;
  std::string what;

  explicit operator bool() const noexcept { return ok; }
};

// A == L*D*U entrywise and every l_{i,i} a unit.
LduCheck check_ldu(const FullSystem& sys);

// Solves lower-triangular L*x == b using inverses of the diagonal.
// Throws UnitError when a diagonal entry is not a unit.
std::vector<u64> forward_substitute(const ResidueMatrix& l, const std::vector<u64>& b, u64 n);

}  // namespace qppinv::oracle

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "qppinv/errors.hpp"
#include "qppinv/inversion.hpp"
#include "qppinv/polyring.hpp"

namespace qppinv::lte {

// Number of LTE interleaver lengths whose QPP has no quadratic inverse.
inline constexpr std::size_t kTableRows = 35;

struct LteEntry {
  u64 length = 0;
  u64 f1 = 0;
  u64 f2 = 0;
  PolyModN published_inverse = PolyModN::zero(1);
};

// Rows are "N,f1,f2,g1:g2:...:gK". Blank lines and lines starting with '#'
// are ignored. Throws ParseError (with line number) on malformed rows or a
// row whose (f1, f2) is not a QPP, and FixtureError when the row count is
// not kTableRows.
std::vector<LteEntry> parse_table(std::istream& in);
std::vector<LteEntry> load_table(const std::filesystem::path& path);

enum class Membership { kEnumerated, kZeroDifference, kAbsent };

struct RowReport {
  LteEntry entry;
  std::size_t published_degree = 0;
  unsigned computed_degree = 0;
  BigInt count;
  bool inverse_verified = false;  // full-domain composition check
  bool degree_matches = false;
  Membership membership = Membership::kAbsent;
  PolyModN particular = PolyModN::zero(1);

  bool passed() const noexcept {
    return inverse_verified && degree_matches && published_degree > 2 && membership != Membership::kAbsent;
  }
};

struct TableReport {
  std::vector<RowReport> rows;

  bool all_passed() const noexcept;
  std::size_t passed_count() const noexcept;
};

// Inverts every row and checks the published inverse against the computed
// solution set: by enumeration when the set has at most `enumeration_cap`
// members, otherwise via the zero-difference criterion. Rows run in parallel.
TableReport reproduce_table(const std::vector<LteEntry>& entries,
                            std::size_t enumeration_cap = kDefaultEnumerationLimit);

std::string_view to_string(Membership m) noexcept;

enum class Direction { kInterleave, kDeinterleave };

// pi(x) for x in [0, N). Throws ContractError unless pi permutes Z_N.
std::vector<u64> permutation_table(const PolyModN& pi);

// Interleave: out[x] = in[pi(x)]. Deinterleave: out[pi(x)] = in[x], the
// inverse reordering under the same pi. Throws ContractError when
// data.size() != N or pi is not a permutation.
template <typename T>
std::vector<T> permute_block(const PolyModN& pi, std::span<const T> data, Direction direction) {
  if (data.size() != pi.modulus()) {
    throw ContractError("block length " + std::to_string(data.size()) + " differs from N = " +
                        std::to_string(pi.modulus()));
  }
  const std::vector<u64> table = permutation_table(pi);
  std::vector<T> out(data.size());
  for (std::size_t x = 0; x < data.size(); ++x) {
    if (direction == Direction::kInterleave) {
      out[x] = data[table[x]];
    } else {
      out[table[x]] = data[x];
    }
  }
  return out;
}

// Newline-delimited unsigned integers.
std::vector<u64> read_block_text(std::istream& in);
void write_block_text(std::ostream& out, std::span<const u64> block);

std::vector<std::uint8_t> read_block_bytes(std::istream& in);
void write_block_bytes(std::ostream& out, std::span<const std::uint8_t> block);

}  // namespace qppinv::lte

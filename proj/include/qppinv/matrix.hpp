#pragma once

#include <cstddef>
#include <vector>

#include "qppinv/modmath.hpp"

namespace qppinv {

// Dense row-major matrix of residues. Indices are 0-based: entry (i, j)
// holds the mathematical entry at row i+1, column j+1.
class ResidueMatrix {
 public:
  ResidueMatrix() = default;
  ResidueMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static ResidueMatrix identity(std::size_t size, u64 n) {
    ResidueMatrix m(size, size);
    for (std::size_t i = 0; i < size; ++i) m(i, i) = 1 % n;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  u64& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  u64 operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::vector<u64> row(std::size_t i) const {
    return {data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
            data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
  }

  friend bool operator==(const ResidueMatrix&, const ResidueMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<u64> data_;
};

inline ResidueMatrix multiply(const ResidueMatrix& a, const ResidueMatrix& b, u64 n) {
  ResidueMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const u64 aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = mod_add(c(i, j), mod_mul(aik, b(k, j), n), n);
    }
  }
  return c;
}

inline std::vector<u64> multiply(const ResidueMatrix& a, const std::vector<u64>& v, u64 n) {
  std::vector<u64> out(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = mod_add(out[i], mod_mul(a(i, j), v[j], n), n);
  }
  return out;
}

}  // namespace qppinv

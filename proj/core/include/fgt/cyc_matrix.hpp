#pragma once

#include "fgt/cyclotomic.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fgt {

/// Dense matrix over the cyclotomic numbers. Entries may carry different
/// orders; arithmetic promotes pairwise as needed.
class CycMatrix {
 public:
  CycMatrix() = default;
  CycMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, Cyclotomic::zero()) {}

  static CycMatrix identity(std::size_t n);
  static CycMatrix scalar(std::size_t n, const Cyclotomic& value);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Cyclotomic& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Cyclotomic& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  CycMatrix operator+(const CycMatrix& rhs) const;
  CycMatrix operator-(const CycMatrix& rhs) const;
  CycMatrix operator*(const CycMatrix& rhs) const;
  CycMatrix scaled(const Cyclotomic& factor) const;
  /// Kronecker product; block (i,j) is a_ij * rhs.
  CycMatrix kron(const CycMatrix& rhs) const;
  Cyclotomic trace() const;
  bool operator==(const CycMatrix& rhs) const;
  bool operator!=(const CycMatrix& rhs) const { return !(*this == rhs); }
  bool is_zero() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Cyclotomic> a_;
};

/// Exact Gaussian elimination over the cyclotomic field.
std::size_t rank(const CycMatrix& a);
/// Basis of {x : A x = 0}.
std::vector<std::vector<Cyclotomic>> nullspace(const CycMatrix& a);
/// Particular solution of A x = b, if consistent.
std::optional<std::vector<Cyclotomic>> solve(const CycMatrix& a,
                                             const std::vector<Cyclotomic>& b);

std::vector<Cyclotomic> matvec(const CycMatrix& a, const std::vector<Cyclotomic>& x);

}  // namespace fgt

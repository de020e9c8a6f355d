#pragma once

#include "fgt/numeric.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fgt {

/// Dense integer matrix with arbitrary-precision entries.
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, Int(0)) {}

  Int& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static IntMatrix identity(std::size_t n);
  IntMatrix mul(const IntMatrix& rhs) const;
  IntMatrix transpose() const;
  bool operator==(const IntMatrix& rhs) const = default;
};

/// U * A * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., all >= 0.
/// Pivot choice is deterministic: smallest nonzero |entry|, ties broken by
/// lowest row then lowest column.
struct SmithResult {
  IntMatrix d, u, v, u_inv, v_inv;
  std::vector<Int> diagonal;  // min(rows, cols) entries of d
  std::size_t rank() const;
};

SmithResult smith_normal_form(const IntMatrix& a);

/// Bareiss fraction-free determinant. pre: square.
Int determinant(const IntMatrix& a);

/// The solution subgroup {x in (Z/m)^cols : A x = 0 mod m}.
struct SolutionSpaceModM {
  Int cardinality = 1;
  std::vector<std::vector<Int>> generators;  // representatives in [0, m)
  std::vector<Int> orders;                   // additive order of each generator
};

/// pre: m >= 2. Cardinality is prod gcd(d_i, m) * m^(free columns).
SolutionSpaceModM solve_linear_mod(const IntMatrix& a, const Int& m);
SolutionSpaceModM solve_linear_mod(const SmithResult& snf, std::size_t cols, const Int& m);

/// Particular solution of A x = b (mod m), if any.
std::optional<std::vector<Int>> solve_linear_system_mod(const IntMatrix& a,
                                                        const std::vector<Int>& b, const Int& m);
std::optional<std::vector<Int>> solve_linear_system_mod(const SmithResult& snf, std::size_t cols,
                                                        const std::vector<Int>& b, const Int& m);

/// Z-spanning set of the saturation of A's column space, im_Q(A) ∩ Z^rows.
std::vector<std::vector<Int>> column_space_saturation(const IntMatrix& a);
std::vector<std::vector<Int>> column_space_saturation(const SmithResult& snf, std::size_t rows);

/// Finite abelian quotient <K> / <B> of subgroups of (Z/m)^n given by
/// generator columns; requires <B> ⊆ <K>.
struct ModQuotient {
  std::vector<Int> invariant_factors;        // divisibility chain, each > 1
  std::vector<std::vector<Int>> generators;  // one per invariant factor, mod m
  Int order = 1;
  std::size_t ambient_dim = 0;
  /// All coset representatives (sums of generator multiples), in lexicographic
  /// order of exponent tuples. pre: order fits in memory.
  std::vector<std::vector<Int>> enumerate(const Int& m) const;
};

ModQuotient subgroup_quotient_mod(const std::vector<std::vector<Int>>& k_gens,
                                  const std::vector<std::vector<Int>>& b_gens, std::size_t n,
                                  const Int& m);

}  // namespace fgt

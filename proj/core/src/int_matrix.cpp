#include "fgt/int_matrix.hpp"

#include "fgt/errors.hpp"

#include <algorithm>

namespace fgt {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::mul(const IntMatrix& rhs) const {
  if (cols != rhs.rows) throw PreconditionError("integer matrix dimension mismatch");
  IntMatrix out(rows, rhs.cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < rhs.cols; ++j) out.at(i, j) += v * rhs.at(k, j);
    }
  return out;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix out(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(j, i) = at(i, j);
  return out;
}

std::size_t SmithResult::rank() const {
  std::size_t r = 0;
  for (const auto& x : diagonal)
    if (x != 0) ++r;
  return r;
}

namespace {

// Elementary operations on D, mirrored into U/U_inv (row ops) or V/V_inv
// (column ops) so that U*A*V = D stays invariant.
struct SmithWork {
  IntMatrix d, u, v, u_inv, v_inv;

  void row_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (std::size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
    for (std::size_t r = 0; r < u_inv.rows; ++r) std::swap(u_inv.at(r, i), u_inv.at(r, j));
  }
  void col_swap(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (std::size_t r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
    for (std::size_t c = 0; c < v_inv.cols; ++c) std::swap(v_inv.at(i, c), v_inv.at(j, c));
  }
  // row_i -= q * row_t
  void row_sub(std::size_t i, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t c = 0; c < d.cols; ++c) d.at(i, c) -= q * d.at(t, c);
    for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(t, c);
    for (std::size_t r = 0; r < u_inv.rows; ++r) u_inv.at(r, t) += q * u_inv.at(r, i);
  }
  // col_j -= q * col_t
  void col_sub(std::size_t j, std::size_t t, const Int& q) {
    if (q == 0) return;
    for (std::size_t r = 0; r < d.rows; ++r) d.at(r, j) -= q * d.at(r, t);
    for (std::size_t r = 0; r < v.rows; ++r) v.at(r, j) -= q * v.at(r, t);
    for (std::size_t c = 0; c < v_inv.cols; ++c) v_inv.at(t, c) += q * v_inv.at(j, c);
  }
  void row_negate(std::size_t i) {
    for (std::size_t c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
    for (std::size_t r = 0; r < u_inv.rows; ++r) u_inv.at(r, i) = -u_inv.at(r, i);
  }
};

}  // namespace

SmithResult smith_normal_form(const IntMatrix& a) {
  SmithWork w{a, IntMatrix::identity(a.rows), IntMatrix::identity(a.cols),
              IntMatrix::identity(a.rows), IntMatrix::identity(a.cols)};
  std::size_t n = std::min(a.rows, a.cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Deterministic pivot: smallest |value|, ties by lowest row then column.
      std::size_t pi = 0, pj = 0;
      bool found = false;
      Int best;
      for (std::size_t i = t; i < a.rows; ++i)
        for (std::size_t j = t; j < a.cols; ++j) {
          const Int& x = w.d.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (!found || ax < best) {
            found = true;
            best = ax;
            pi = i;
            pj = j;
          }
        }
      if (!found) {
        t = n;  // remaining block is zero
        break;
      }
      w.row_swap(t, pi);
      w.col_swap(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < a.rows; ++i) {
        if (w.d.at(i, t) == 0) continue;
        Int q = w.d.at(i, t) / w.d.at(t, t);
        w.row_sub(i, t, q);
        if (w.d.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < a.cols; ++j) {
        if (w.d.at(t, j) == 0) continue;
        Int q = w.d.at(t, j) / w.d.at(t, t);
        w.col_sub(j, t, q);
        if (w.d.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;  // a smaller remainder appeared; re-pivot

      // Pivot must divide the rest of the submatrix for the divisibility chain.
      bool divides = true;
      for (std::size_t i = t + 1; i < a.rows && divides; ++i)
        for (std::size_t j = t + 1; j < a.cols && divides; ++j)
          if (w.d.at(i, j) % w.d.at(t, t) != 0) {
            w.row_sub(t, i, Int(-1));  // pull the offending row in and retry
            divides = false;
          }
      if (divides) break;
    }
    if (t >= n) break;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (w.d.at(i, i) < 0) w.row_negate(i);

  SmithResult out;
  out.d = std::move(w.d);
  out.u = std::move(w.u);
  out.v = std::move(w.v);
  out.u_inv = std::move(w.u_inv);
  out.v_inv = std::move(w.v_inv);
  out.diagonal.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(out.d.at(i, i));
  return out;
}

Int determinant(const IntMatrix& a) {
  if (a.rows != a.cols) throw PreconditionError("determinant of non-square matrix");
  std::size_t n = a.rows;
  if (n == 0) return 1;
  IntMatrix m = a;
  Int prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m.at(swap_row, k) == 0) ++swap_row;
      if (swap_row == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
}

SolutionSpaceModM solve_linear_mod(const SmithResult& snf, std::size_t cols, const Int& m) {
  if (m < 2) throw PreconditionError("solve_linear_mod requires modulus >= 2");
  SolutionSpaceModM out;
  std::size_t r = snf.rank();
  // x = V y with d_i y_i = 0 mod m: y_i in (m / gcd(d_i, m)) Z, free beyond rank.
  for (std::size_t i = 0; i < r; ++i) {
    Int g = gcd(snf.diagonal[i], m);
    out.cardinality *= g;
    if (g == 1) continue;
    std::vector<Int> gen(cols);
    Int step = m / g;
    for (std::size_t row = 0; row < cols; ++row)
      gen[row] = mod_floor(snf.v.at(row, i) * step, m);
    out.generators.push_back(std::move(gen));
    out.orders.push_back(g);
  }
  for (std::size_t i = r; i < cols; ++i) {
    out.cardinality *= m;
    std::vector<Int> gen(cols);
    for (std::size_t row = 0; row < cols; ++row) gen[row] = mod_floor(snf.v.at(row, i), m);
    out.generators.push_back(std::move(gen));
    out.orders.push_back(m);
  }
  return out;
}

SolutionSpaceModM solve_linear_mod(const IntMatrix& a, const Int& m) {
  return solve_linear_mod(smith_normal_form(a), a.cols, m);
}

std::optional<std::vector<Int>> solve_linear_system_mod(const SmithResult& snf, std::size_t cols,
                                                        const std::vector<Int>& b, const Int& m) {
  if (m < 1) throw PreconditionError("modulus must be positive");
  std::size_t rows = snf.u.rows;
  if (b.size() != rows) throw PreconditionError("right-hand side size mismatch");
  // D y = U b (mod m); then x = V y.
  std::vector<Int> c(rows, Int(0));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) c[i] += snf.u.at(i, j) * b[j];
    c[i] = mod_floor(c[i], m);
  }
  std::size_t n = snf.diagonal.size();
  std::vector<Int> y(cols, Int(0));
  for (std::size_t i = 0; i < rows; ++i) {
    Int d = (i < n) ? snf.diagonal[i] : Int(0);
    if (d == 0) {
      if (c[i] % m != 0) return std::nullopt;
      continue;
    }
    Int g = gcd(d, m);
    if (c[i] % g != 0) return std::nullopt;
    // (d/g) y_i = c_i/g (mod m/g), with d/g invertible mod m/g.
    Int mm = m / g;
    if (mm == 1) {
      y[i] = 0;
      continue;
    }
    Int dg = mod_floor(d / g, mm);
    Int cg = mod_floor(c[i] / g, mm);
    // Modular inverse by extended gcd.
    Int t0 = 0, t1 = 1, r0 = mm, r1 = dg;
    while (r1 != 0) {
      Int q = r0 / r1;
      t0 -= q * t1;
      std::swap(t0, t1);
      r0 -= q * r1;
      std::swap(r0, r1);
    }
    if (r0 != 1) throw PreconditionError("inverse does not exist; gcd reduction failed");
    y[i] = mod_floor(t0 * cg, mm);
  }
  std::vector<Int> x(cols, Int(0));
  for (std::size_t row = 0; row < cols; ++row) {
    for (std::size_t col = 0; col < cols; ++col) {
      if (y[col] == 0) continue;
      x[row] += snf.v.at(row, col) * y[col];
    }
    x[row] = mod_floor(x[row], m);
  }
  return x;
}

std::optional<std::vector<Int>> solve_linear_system_mod(const IntMatrix& a,
                                                        const std::vector<Int>& b, const Int& m) {
  return solve_linear_system_mod(smith_normal_form(a), a.cols, b, m);
}

std::vector<std::vector<Int>> column_space_saturation(const SmithResult& snf, std::size_t rows) {
  std::vector<std::vector<Int>> out;
  std::size_t r = snf.rank();
  // im_Q(A) = span_Q{ U^-1 e_i : d_i != 0 }; those columns are a Z-basis of
  // the saturation because U^-1 is unimodular.
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Int> gen(rows);
    for (std::size_t row = 0; row < rows; ++row) gen[row] = snf.u_inv.at(row, i);
    out.push_back(std::move(gen));
  }
  return out;
}

std::vector<std::vector<Int>> column_space_saturation(const IntMatrix& a) {
  return column_space_saturation(smith_normal_form(a), a.rows);
}

ModQuotient subgroup_quotient_mod(const std::vector<std::vector<Int>>& k_gens,
                                  const std::vector<std::vector<Int>>& b_gens, std::size_t n,
                                  const Int& m) {
  std::size_t k = k_gens.size();
  ModQuotient out;
  out.ambient_dim = n;
  if (k == 0) return out;
  IntMatrix kmat(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (k_gens[j].size() != n) throw PreconditionError("generator length mismatch");
    for (std::size_t i = 0; i < n; ++i) kmat.at(i, j) = k_gens[j][i];
  }
  SmithResult ksnf = smith_normal_form(kmat);

  // Relation lattice of the K generators inside Z^k, then the B coordinates.
  std::vector<std::vector<Int>> relations;
  if (m >= 2) {
    SolutionSpaceModM rel = solve_linear_mod(ksnf, k, m);
    relations = rel.generators;
  }
  std::vector<std::vector<Int>> b_coords;
  for (const auto& b : b_gens) {
    auto coord = solve_linear_system_mod(ksnf, k, b, m);
    if (!coord) throw PreconditionError("quotient denominator is not inside the numerator subgroup");
    b_coords.push_back(*coord);
  }

  std::size_t lam_cols = relations.size() + k + b_coords.size();
  IntMatrix lambda(k, lam_cols);
  std::size_t col = 0;
  for (const auto& rel : relations) {
    for (std::size_t i = 0; i < k; ++i) lambda.at(i, col) = rel[i];
    ++col;
  }
  for (std::size_t i = 0; i < k; ++i) lambda.at(i, col + i) = m;
  col += k;
  for (const auto& c : b_coords) {
    for (std::size_t i = 0; i < k; ++i) lambda.at(i, col) = c[i];
    ++col;
  }

  SmithResult lsnf = smith_normal_form(lambda);
  // Z^k / im(lambda) = ⊕ Z/d_i with i-th cyclic generator U^-1 e_i.
  for (std::size_t i = 0; i < k; ++i) {
    Int d = (i < lsnf.diagonal.size()) ? lsnf.diagonal[i] : Int(0);
    if (d == 0) throw PreconditionError("quotient is infinite; modulus columns missing");
    if (d == 1) continue;
    out.order *= d;
    out.invariant_factors.push_back(d);
    std::vector<Int> gen(n, Int(0));
    for (std::size_t row = 0; row < n; ++row) {
      for (std::size_t j = 0; j < k; ++j) gen[row] += kmat.at(row, j) * lsnf.u_inv.at(j, i);
      gen[row] = mod_floor(gen[row], m);
    }
    out.generators.push_back(std::move(gen));
  }
  return out;  // SNF diagonal already satisfies the divisibility chain
}

std::vector<std::vector<Int>> ModQuotient::enumerate(const Int& m) const {
  std::vector<std::vector<Int>> out;
  std::vector<Int> exponents(generators.size(), Int(0));
  for (;;) {
    std::vector<Int> rep(ambient_dim, Int(0));
    for (std::size_t g = 0; g < generators.size(); ++g) {
      if (exponents[g] == 0) continue;
      for (std::size_t i = 0; i < ambient_dim; ++i)
        rep[i] = mod_floor(rep[i] + exponents[g] * generators[g][i], m);
    }
    out.push_back(std::move(rep));
    if (generators.empty()) return out;
    std::size_t g = generators.size();
    while (true) {
      --g;
      exponents[g] += 1;
      if (exponents[g] < invariant_factors[g]) break;
      exponents[g] = 0;
      if (g == 0) return out;
    }
  }
}

}  // namespace fgt

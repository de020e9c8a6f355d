#include "fgt/cyc_matrix.hpp"

#include "fgt/errors.hpp"

namespace fgt {

CycMatrix CycMatrix::identity(std::size_t n) { return scalar(n, Cyclotomic::one()); }

CycMatrix CycMatrix::scalar(std::size_t n, const Cyclotomic& value) {
  CycMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = value;
  return m;
}

CycMatrix CycMatrix::operator+(const CycMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw PreconditionError("matrix shape mismatch in addition");
  CycMatrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] += rhs.a_[i];
  return out;
}

CycMatrix CycMatrix::operator-(const CycMatrix& rhs) const {
  return *this + rhs.scaled(Cyclotomic(Rational(-1)));
}

CycMatrix CycMatrix::operator*(const CycMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw PreconditionError("matrix shape mismatch in product");
  CycMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Cyclotomic& v = at(i, k);
      if (v.is_zero()) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        if (rhs.at(k, j).is_zero()) continue;
        out.at(i, j) += v * rhs.at(k, j);
      }
    }
  return out;
}

CycMatrix CycMatrix::scaled(const Cyclotomic& factor) const {
  CycMatrix out = *this;
  for (auto& x : out.a_) x *= factor;
  return out;
}

CycMatrix CycMatrix::kron(const CycMatrix& rhs) const {
  CycMatrix out(rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j).is_zero()) continue;
      for (std::size_t k = 0; k < rhs.rows_; ++k)
        for (std::size_t l = 0; l < rhs.cols_; ++l)
          out.at(i * rhs.rows_ + k, j * rhs.cols_ + l) = at(i, j) * rhs.at(k, l);
    }
  return out;
}

Cyclotomic CycMatrix::trace() const {
  if (rows_ != cols_) throw PreconditionError("trace of non-square matrix");
  Cyclotomic t;
  for (std::size_t i = 0; i < rows_; ++i) t += at(i, i);
  return t;
}

bool CycMatrix::operator==(const CycMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) return false;
  for (std::size_t i = 0; i < a_.size(); ++i)
    if (a_[i] != rhs.a_[i]) return false;
  return true;
}

bool CycMatrix::is_zero() const {
  for (const auto& x : a_)
    if (!x.is_zero()) return false;
  return true;
}

namespace {

struct Eliminated {
  CycMatrix m;                     // reduced row echelon form
  std::vector<std::size_t> lead;   // pivot column per pivot row
};

Eliminated reduce(CycMatrix m) {
  std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::size_t> lead;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && m.at(pivot, c).is_zero()) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(r, j));
    Cyclotomic inv = m.at(r, c).inverse();
    for (std::size_t j = c; j < cols; ++j) m.at(r, j) *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m.at(i, c).is_zero()) continue;
      Cyclotomic factor = m.at(i, c);
      for (std::size_t j = c; j < cols; ++j) m.at(i, j) += m.at(r, j) * (-factor);
    }
    lead.push_back(c);
    ++r;
  }
  return {std::move(m), std::move(lead)};
}

}  // namespace

std::size_t rank(const CycMatrix& a) { return reduce(a).lead.size(); }

std::vector<std::vector<Cyclotomic>> nullspace(const CycMatrix& a) {
  Eliminated e = reduce(a);
  std::size_t cols = a.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto c : e.lead) is_pivot[c] = true;
  std::vector<std::vector<Cyclotomic>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Cyclotomic> x(cols, Cyclotomic::zero());
    x[free] = Cyclotomic::one();
    for (std::size_t r = 0; r < e.lead.size(); ++r)
      x[e.lead[r]] = -e.m.at(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

std::optional<std::vector<Cyclotomic>> solve(const CycMatrix& a,
                                             const std::vector<Cyclotomic>& b) {
  if (b.size() != a.rows()) throw PreconditionError("right-hand side size mismatch");
  CycMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  Eliminated e = reduce(std::move(aug));
  std::vector<Cyclotomic> x(a.cols(), Cyclotomic::zero());
  for (std::size_t r = 0; r < e.lead.size(); ++r) {
    if (e.lead[r] == a.cols()) return std::nullopt;  // pivot in the constant column
    x[e.lead[r]] = e.m.at(r, a.cols());
  }
  return x;
}

std::vector<Cyclotomic> matvec(const CycMatrix& a, const std::vector<Cyclotomic>& x) {
  if (x.size() != a.cols()) throw PreconditionError("vector size mismatch");
  std::vector<Cyclotomic> out(a.rows(), Cyclotomic::zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a.at(i, j).is_zero() || x[j].is_zero()) continue;
      out[i] += a.at(i, j) * x[j];
    }
  return out;
}

}  // namespace fgt

#include "fgt/twisted_double.hpp"

#include <algorithm>

#include "fgt/errors.hpp"
#include "fgt/int_matrix.hpp"

namespace fgt {

LoopTwoCochain transgress(const GroupCochain& alpha) {
  if (!is_three_cocycle(alpha)) throw PreconditionError("transgression requires a 3-cocycle");
  const auto& gr = *alpha.group();
  const std::size_t n = gr.order();
  LoopTwoCochain out(alpha.group());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        std::size_t hg = gr.mul(h, g);
        Phase v = alpha.at({x, g, h}) + alpha.at({g, h, gr.conj(hg, x)}) -
                  alpha.at({g, gr.conj(g, x), h});
        out.set(x, g, h, v);
      }
  return out;
}

LoopOneCochain::LoopOneCochain(GroupPtr group) : group_(std::move(group)) {
  if (!group_) throw PreconditionError("loop cochain needs a group");
  n_ = group_->order();
  values_.assign(n_ * n_, Phase());
}

bool LoopOneCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Phase& p) { return p.is_zero(); });
}

LoopTwoCochain loop_coboundary(const LoopOneCochain& lam) {
  const auto& gr = *lam.group();
  const std::size_t n = gr.order();
  LoopTwoCochain out(lam.group());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h)
        out.set(x, g, h, lam.at(x, g) + lam.at(gr.conj(g, x), h) - lam.at(x, gr.mul(h, g)));
  return out;
}

std::optional<LoopOneCochain> loop_coboundary_witness(const LoopTwoCochain& w,
                                                      const Int& modulus) {
  if (modulus < 1) throw PreconditionError("modulus must be positive");
  const auto& gr = *w.group();
  const std::size_t n = gr.order();
  IntMatrix d(n * n * n, n * n);
  std::vector<Int> rhs(n * n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t h = 0; h < n; ++h) {
        std::size_t row = (x * n + g) * n + h;
        d.at(row, x * n + g) += 1;
        d.at(row, gr.conj(g, x) * n + h) += 1;
        d.at(row, x * n + gr.mul(h, g)) -= 1;
        Phase v = w.at(x, g, h);
        if (modulus % v.den() != 0)
          throw PreconditionError("twist value " + v.to_string() + " lies outside (1/" +
                                  modulus.str() + ")Z/Z");
        rhs[row] = v.num() * (modulus / v.den());
      }
  auto sol = solve_linear_system_mod(d, rhs, modulus);
  if (!sol) return std::nullopt;
  LoopOneCochain lam(w.group());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) lam.set(x, g, Phase((*sol)[x * n + g], modulus));
  return lam;
}

TwistedLoopAlgebra::TwistedLoopAlgebra(GroupPtr group, LoopTwoCochain twist)
    : group_(std::move(group)), twist_(std::move(twist)) {
  if (!(*group_ == *twist_.group()))
    throw PreconditionError("twist is defined over a different group");
  if (!twist_.normalized()) throw PreconditionError("twist must be normalized");
  n_ = group_->order();
  Int ord = 1;
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t g = 0; g < n_; ++g)
      for (std::size_t h = 0; h < n_; ++h) ord = lcm(ord, twist_.at(x, g, h).den());
  if (ord > 1000000) throw SizeGuardError("twist denominators exceed cyclotomic order guard");
  order_ = static_cast<unsigned>(ord);
}

TwistedLoopAlgebra::Term TwistedLoopAlgebra::basis_product(std::size_t i, std::size_t j) const {
  auto [x, g] = basis_label(i);
  auto [y, h] = basis_label(j);
  if (y != group_->conj(g, x)) return {};
  return {false, twist_.at(x, g, h), basis_index(x, group_->mul(h, g))};
}

std::vector<Cyclotomic> TwistedLoopAlgebra::multiply(const std::vector<Cyclotomic>& a,
                                                     const std::vector<Cyclotomic>& b) const {
  if (a.size() != dimension() || b.size() != dimension())
    throw PreconditionError("algebra element has wrong length");
  std::vector<Cyclotomic> out(dimension());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      Term t = basis_product(i, j);
      if (t.zero) continue;
      out[t.index] += embed(t.phase, order_) * a[i] * b[j];
    }
  }
  return out;
}

std::vector<Cyclotomic> TwistedLoopAlgebra::unit() const {
  std::vector<Cyclotomic> out(dimension());
  for (std::size_t x = 0; x < n_; ++x)
    out[basis_index(x, group_->identity())] = Cyclotomic(Rational(1));
  return out;
}

bool check_associativity(const TwistedLoopAlgebra& a) {
  const std::size_t dim = a.dimension();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      auto ij = a.basis_product(i, j);
      for (std::size_t k = 0; k < dim; ++k) {
        auto jk = a.basis_product(j, k);
        TwistedLoopAlgebra::Term lhs, rhs;
        if (!ij.zero) {
          auto t = a.basis_product(ij.index, k);
          if (!t.zero) lhs = {false, ij.phase + t.phase, t.index};
        }
        if (!jk.zero) {
          auto t = a.basis_product(i, jk.index);
          if (!t.zero) rhs = {false, t.phase + jk.phase, t.index};
        }
        if (lhs.zero != rhs.zero) return false;
        if (!lhs.zero && (lhs.index != rhs.index || !(lhs.phase == rhs.phase))) return false;
      }
    }
  return true;
}

namespace {

/// Union-find over coordinates with phase offsets: c_v = offset(v) + c_root.
class RatioUnionFind {
 public:
  explicit RatioUnionFind(std::size_t n) : parent_(n), offset_(n), zero_(n, false) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
  }

  std::pair<std::size_t, Phase> find(std::size_t v) {
    if (parent_[v] == v) return {v, offset_[v]};
    auto [root, off] = find(parent_[v]);
    parent_[v] = root;
    offset_[v] = offset_[v] + off;
    return {root, offset_[v]};
  }

  /// Impose c_u = delta + c_v.
  void relate(std::size_t u, std::size_t v, const Phase& delta) {
    auto [ru, ou] = find(u);
    auto [rv, ov] = find(v);
    if (ru == rv) {
      if (!(ou == delta + ov)) zero_[ru] = true;  // conflicting ratio kills the component
      return;
    }
    parent_[ru] = rv;
    offset_[ru] = delta + ov - ou;
    zero_[rv] = zero_[rv] || zero_[ru];
  }

  void kill(std::size_t v) { zero_[find(v).first] = true; }

  std::size_t live_components() {
    std::size_t count = 0;
    for (std::size_t v = 0; v < parent_.size(); ++v) {
      auto [r, off] = find(v);
      (void)off;
      if (r == v && !zero_[v]) ++count;
    }
    return count;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<Phase> offset_;
  std::vector<bool> zero_;
};

}  // namespace

std::size_t center_dimension(const TwistedLoopAlgebra& a) {
  if (!check_associativity(a)) throw PreconditionError("center requires an associative algebra");
  const auto& gr = *a.group();
  const std::size_t n = gr.order();
  const auto& w = a.twist();
  RatioUnionFind uf(a.dimension());
  // z e_j = e_j z, coordinatewise. Products are monomial, so each coordinate
  // equation relates at most one source coordinate on each side.
  for (std::size_t y = 0; y < n; ++y)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t ww = 0; ww < n; ++ww)
        for (std::size_t s = 0; s < n; ++s) {
          // left: the unique i = (ww, g) with product index (ww, s) and
          // composability conj(g, ww) = y
          std::size_t g = gr.mul(gr.inv(h), s);
          bool has_left = gr.conj(g, ww) == y;
          // right: the unique i' = (conj(h,y), g') with product index (y, s),
          // which requires y = ww
          std::size_t gp = gr.mul(s, gr.inv(h));
          bool has_right = y == ww;
          if (has_left && has_right) {
            uf.relate(a.basis_index(ww, g), a.basis_index(gr.conj(h, y), gp),
                      w.at(y, h, gp) - w.at(ww, g, h));
          } else if (has_left) {
            uf.kill(a.basis_index(ww, g));
          } else if (has_right) {
            uf.kill(a.basis_index(gr.conj(h, y), gp));
          }
        }
  return uf.live_components();
}

bool is_twisted_rep(const LoopRep& sigma, const LoopTwoCochain& w) {
  const auto& gr = *sigma.group;
  if (!(gr == *w.group())) throw PreconditionError("bundle and twist groups differ");
  const std::size_t n = gr.order();
  if (sigma.dims.size() != n || sigma.matrices.size() != n * n)
    throw PreconditionError("bundle data has wrong shape");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) {
      const auto& m = sigma.at(x, g);
      if (m.rows() != sigma.dims[gr.conj(g, x)] || m.cols() != sigma.dims[x])
        throw PreconditionError("bundle matrix at (" + std::to_string(x) + "," +
                                std::to_string(g) + ") has wrong shape");
    }
  for (std::size_t x = 0; x < n; ++x)
    if (!(sigma.at(x, gr.identity()) == CycMatrix::identity(sigma.dims[x]))) return false;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t y = gr.conj(g, x);
      for (std::size_t h = 0; h < n; ++h) {
        CycMatrix lhs = sigma.at(y, h) * sigma.at(x, g);
        CycMatrix rhs = sigma.at(x, gr.mul(h, g)).scaled(embed(w.at(x, g, h)));
        if (!(lhs == rhs)) return false;
      }
    }
  return true;
}

LoopRep unit_rep(const GroupPtr& group) {
  std::vector<Phase> chi(group->order(), Phase());
  return character_rep(group, group->identity(), chi);
}

LoopRep character_rep(const GroupPtr& group, std::size_t x, const std::vector<Phase>& chi) {
  const std::size_t n = group->order();
  if (x >= n || chi.size() != n) throw PreconditionError("character data has wrong shape");
  for (std::size_t g = 0; g < n; ++g)
    if (group->conj(g, x) != x)
      throw PreconditionError("character bundle needs a central support element");
  LoopRep out;
  out.group = group;
  out.dims.assign(n, 0);
  out.dims[x] = 1;
  out.matrices.reserve(n * n);
  for (std::size_t obj = 0; obj < n; ++obj)
    for (std::size_t g = 0; g < n; ++g) {
      if (obj == x) {
        CycMatrix m(1, 1);
        m.at(0, 0) = embed(chi[g]);
        out.matrices.push_back(std::move(m));
      } else {
        out.matrices.push_back(CycMatrix(out.dims[group->conj(g, obj)], 0));
      }
    }
  return out;
}

LoopRep fuse(const LoopRep& a, const LoopRep& b) {
  const auto& gr = *a.group;
  if (!(gr == *b.group)) throw PreconditionError("fusion requires bundles over the same group");
  LoopTwoCochain zero(a.group);
  if (!is_twisted_rep(a, zero) || !is_twisted_rep(b, zero))
    throw PreconditionError("fusion requires untwisted bundles");
  const std::size_t n = gr.order();

  LoopRep out;
  out.group = a.group;
  out.dims.assign(n, 0);
  // y-block offsets inside each fused object space
  std::vector<std::vector<std::size_t>> offset(n, std::vector<std::size_t>(n, 0));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t total = 0;
    for (std::size_t y = 0; y < n; ++y) {
      offset[x][y] = total;
      total += a.dims[gr.mul(x, gr.inv(y))] * b.dims[y];
    }
    out.dims[x] = total;
  }
  out.matrices.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t xt = gr.conj(g, x);
      CycMatrix m(out.dims[xt], out.dims[x]);
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t rest = gr.mul(x, gr.inv(y));
        if (a.dims[rest] == 0 || b.dims[y] == 0) continue;
        std::size_t yt = gr.conj(g, y);
        CycMatrix block = a.at(rest, g).kron(b.at(y, g));
        for (std::size_t r = 0; r < block.rows(); ++r)
          for (std::size_t c = 0; c < block.cols(); ++c)
            m.at(offset[xt][yt] + r, offset[x][y] + c) = block.at(r, c);
      }
      out.matrices.push_back(std::move(m));
    }
  return out;
}

std::vector<Cyclotomic> rep_character(const LoopRep& sigma) {
  const auto& gr = *sigma.group;
  const std::size_t n = gr.order();
  std::vector<Cyclotomic> out(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      if (gr.conj(g, x) == x) out[x * n + g] = sigma.at(x, g).trace();
  return out;
}

}  // namespace fgt

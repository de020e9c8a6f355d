#include "fgt/cohomology.hpp"

#include <algorithm>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

Int int_pow(std::size_t base, unsigned exp) {
  Int r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= Int(base);
  return r;
}

std::size_t checked_power(std::size_t base, unsigned exp, std::size_t limit,
                          const std::string& what) {
  Int p = int_pow(base, exp);
  if (p > Int(limit)) throw SizeGuardError(what + " exceeds guard of " + std::to_string(limit));
  return static_cast<std::size_t>(p);
}

void require_same_shape(const GroupCochain& a, const GroupCochain& b) {
  if (a.degree() != b.degree() || !(*a.group() == *b.group()))
    throw PreconditionError("cochain arithmetic requires matching group and degree");
}

void check_degree_guard(const FiniteGroup& g, unsigned n) {
  if (n < 1 || n > 4) throw PreconditionError("degree must lie in 1..4");
  checked_power(g.order() - 1, n + 1, 100000, "normalized bar complex size");
}

}  // namespace

GroupCochain::GroupCochain(GroupPtr group, unsigned degree)
    : group_(std::move(group)), degree_(degree) {
  if (!group_) throw PreconditionError("cochain needs a group");
  std::size_t size = checked_power(group_->order(), degree_, 10000000, "cochain table size");
  values_.assign(size, Phase());
}

std::size_t GroupCochain::index_of(const std::vector<std::size_t>& args) const {
  if (args.size() != degree_) throw PreconditionError("cochain argument count mismatch");
  std::size_t idx = 0;
  for (std::size_t a : args) {
    if (a >= group_->order()) throw PreconditionError("cochain argument out of range");
    idx = idx * group_->order() + a;
  }
  return idx;
}

std::vector<std::size_t> GroupCochain::args_of(std::size_t index) const {
  std::vector<std::size_t> args(degree_);
  for (std::size_t i = degree_; i-- > 0;) {
    args[i] = index % group_->order();
    index /= group_->order();
  }
  return args;
}

bool GroupCochain::normalized() const {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i].is_zero()) continue;
    auto args = args_of(i);
    if (std::find(args.begin(), args.end(), group_->identity()) != args.end()) return false;
  }
  return true;
}

bool GroupCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Phase& p) { return p.is_zero(); });
}

GroupCochain GroupCochain::operator+(const GroupCochain& rhs) const {
  require_same_shape(*this, rhs);
  GroupCochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + rhs.values_[i];
  return out;
}

GroupCochain GroupCochain::operator-(const GroupCochain& rhs) const {
  require_same_shape(*this, rhs);
  GroupCochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] - rhs.values_[i];
  return out;
}

bool GroupCochain::operator==(const GroupCochain& rhs) const {
  return degree_ == rhs.degree_ && *group_ == *rhs.group_ && values_ == rhs.values_;
}

GroupCochain differential(const GroupCochain& c) {
  const auto& g = *c.group();
  const unsigned n = c.degree();
  checked_power(g.order(), n + 1, 1000000, "differential table size");
  GroupCochain out(c.group(), n + 1);
  std::vector<std::size_t> tuple(n + 1, 0), sub(n);
  for (std::size_t idx = 0; idx < out.size(); ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n + 1; i-- > 0;) {
      tuple[i] = rest % g.order();
      rest /= g.order();
    }
    Phase total;
    // front face: drop the first argument
    sub.assign(tuple.begin() + 1, tuple.end());
    total += c.at(sub);
    // inner faces: merge g_i, g_{i+1} into g_{i+1} g_i
    for (unsigned i = 1; i <= n; ++i) {
      sub.clear();
      sub.insert(sub.end(), tuple.begin(), tuple.begin() + (i - 1));
      sub.push_back(g.mul(tuple[i], tuple[i - 1]));
      sub.insert(sub.end(), tuple.begin() + i + 1, tuple.end());
      Phase term = c.at(sub);
      total += (i % 2 ? -term : term);
    }
    // back face: drop the last argument
    sub.assign(tuple.begin(), tuple.end() - 1);
    Phase term = c.at(sub);
    total += ((n + 1) % 2 ? -term : term);
    out.set_index(idx, total);
  }
  return out;
}

bool is_three_cocycle(const GroupCochain& alpha) {
  if (alpha.degree() != 3) throw PreconditionError("cocycle test requires a degree-3 cochain");
  const auto& gr = *alpha.group();
  const std::size_t n = gr.order();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Phase lhs = alpha.at({g, h, k}) + alpha.at({g, gr.mul(k, h), l}) + alpha.at({h, k, l});
          Phase rhs = alpha.at({gr.mul(h, g), k, l}) + alpha.at({g, h, gr.mul(l, k)});
          if (!(lhs == rhs)) return false;
        }
  return true;
}

GroupCochain cyclic_three_cocycle(const GroupPtr& cyclic_group, const Int& p) {
  const std::size_t n = cyclic_group->order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (cyclic_group->mul(a, b) != (a + b) % n)
        throw PreconditionError("cyclic cocycle requires the standard cyclic table");
  if (p < 0 || p >= Int(n)) throw PreconditionError("cyclic cocycle parameter must satisfy 0 <= p < n");
  GroupCochain out(cyclic_group, 3);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        out.set({a, b, c}, Phase(p * Int(a) * Int((b + c) / n), Int(n)));
  return out;
}

GroupCochain cyclic_three_cocycle(std::size_t n, const Int& p) {
  return cyclic_three_cocycle(std::make_shared<FiniteGroup>(FiniteGroup::cyclic(n)), p);
}

IntMatrix cochain_differential_matrix(const FiniteGroup& g, unsigned n, bool normalized) {
  const std::size_t base = normalized ? g.order() - 1 : g.order();
  const std::size_t offset = normalized ? 1 : 0;
  std::size_t rows = checked_power(base, n + 1, 1000000, "differential matrix rows");
  std::size_t cols = checked_power(base, n, 1000000, "differential matrix columns");
  if (rows * cols > 30000000) throw SizeGuardError("differential matrix entry count exceeds guard");

  IntMatrix d(rows, cols);
  std::vector<std::size_t> tuple(n + 1), sub(n);
  auto col_of = [&](const std::vector<std::size_t>& args) -> std::size_t {
    std::size_t idx = 0;
    for (std::size_t a : args) idx = idx * base + (a - offset);
    return idx;
  };
  auto degenerate = [&](const std::vector<std::size_t>& args) {
    return normalized &&
           std::find(args.begin(), args.end(), g.identity()) != args.end();
  };
  for (std::size_t row = 0; row < rows; ++row) {
    std::size_t rest = row;
    for (std::size_t i = n + 1; i-- > 0;) {
      tuple[i] = rest % base + offset;
      rest /= base;
    }
    sub.assign(tuple.begin() + 1, tuple.end());
    if (!degenerate(sub)) d.at(row, col_of(sub)) += 1;
    for (unsigned i = 1; i <= n; ++i) {
      sub.clear();
      sub.insert(sub.end(), tuple.begin(), tuple.begin() + (i - 1));
      sub.push_back(g.mul(tuple[i], tuple[i - 1]));
      sub.insert(sub.end(), tuple.begin() + i + 1, tuple.end());
      if (!degenerate(sub)) d.at(row, col_of(sub)) += (i % 2 ? -1 : 1);
    }
    sub.assign(tuple.begin(), tuple.end() - 1);
    if (!degenerate(sub)) d.at(row, col_of(sub)) += ((n + 1) % 2 ? -1 : 1);
  }
  return d;
}

namespace {

/// Maps a coefficient vector over (1/M)Z/Z on normalized or full tuples back
/// to a total cochain (degenerate tuples stay 0 in the normalized case).
GroupCochain cochain_from_vector(const GroupPtr& g, unsigned degree, const std::vector<Int>& vec,
                                 const Int& m, bool normalized) {
  GroupCochain out(g, degree);
  const std::size_t base = normalized ? g->order() - 1 : g->order();
  const std::size_t offset = normalized ? 1 : 0;
  std::vector<std::size_t> args(degree);
  for (std::size_t i = 0; i < vec.size(); ++i) {
    std::size_t rest = i;
    for (std::size_t j = degree; j-- > 0;) {
      args[j] = rest % base + offset;
      rest /= base;
    }
    out.set(args, Phase(vec[i], m));
  }
  return out;
}

/// Values of a cochain as integers a_i with value = a_i / M, restricted to the
/// tuple family of the matrix indexing.
std::vector<Int> vector_from_cochain(const GroupCochain& c, const Int& m, bool normalized) {
  const auto& g = *c.group();
  const std::size_t base = normalized ? g.order() - 1 : g.order();
  const std::size_t offset = normalized ? 1 : 0;
  std::size_t size = 1;
  for (unsigned i = 0; i < c.degree(); ++i) size *= base;
  std::vector<Int> out(size);
  std::vector<std::size_t> args(c.degree());
  for (std::size_t i = 0; i < size; ++i) {
    std::size_t rest = i;
    for (std::size_t j = c.degree(); j-- > 0;) {
      args[j] = rest % base + offset;
      rest /= base;
    }
    Phase v = c.at(args);
    if (m % v.den() != 0)
      throw PreconditionError("cochain value " + v.to_string() + " lies outside (1/" + m.str() +
                              ")Z/Z");
    out[i] = v.num() * (m / v.den());
  }
  return out;
}

}  // namespace

std::optional<GroupCochain> is_coboundary(const GroupCochain& alpha, const Int& modulus) {
  if (alpha.degree() < 1) throw PreconditionError("coboundary test requires degree >= 1");
  if (modulus < 1) throw PreconditionError("modulus must be positive");
  if (modulus == 1) {
    if (!alpha.is_zero())
      throw PreconditionError("cochain value lies outside (1/1)Z/Z");
    return GroupCochain(alpha.group(), alpha.degree() - 1);
  }
  const bool norm = alpha.normalized();
  auto rhs = vector_from_cochain(alpha, modulus, norm);
  IntMatrix d = cochain_differential_matrix(*alpha.group(), alpha.degree() - 1, norm);
  auto sol = solve_linear_system_mod(d, rhs, modulus);
  if (!sol) return std::nullopt;
  return cochain_from_vector(alpha.group(), alpha.degree() - 1, *sol, modulus, norm);
}

std::vector<Int> group_homology(const FiniteGroup& g, unsigned n) {
  check_degree_guard(g, n);
  // The boundary C_{n+1} -> C_n is the transpose of the degree-n cochain
  // differential; torsion of H_n equals its nontrivial invariant factors.
  auto snf = smith_normal_form(cochain_differential_matrix(g, n, true));
  std::vector<Int> factors;
  for (const Int& d : snf.diagonal)
    if (d > 1) factors.push_back(d);
  return factors;
}

CocycleClasses solve_cocycles(const GroupPtr& g, unsigned n, const Int& modulus) {
  check_degree_guard(*g, n);
  if (modulus < 1) throw PreconditionError("modulus must be positive");
  CocycleClasses out;
  Int homology_order = 1;
  for (const Int& d : group_homology(*g, n)) homology_order *= d;
  if (modulus == 1) {
    out.cocycle_count = 1;
    out.class_count = 1;
    out.representatives.emplace_back(g, n);
    out.matches_homology = homology_order == 1;
    return out;
  }
  IntMatrix dn = cochain_differential_matrix(*g, n, true);
  auto kernel = solve_linear_mod(dn, modulus);
  out.cocycle_count = kernel.cardinality;

  IntMatrix dprev = cochain_differential_matrix(*g, n - 1, true);
  auto saturated = column_space_saturation(dprev);
  for (auto& v : saturated)
    for (auto& e : v) e = mod_floor(e, modulus);

  auto quotient = subgroup_quotient_mod(kernel.generators, saturated, dn.cols, modulus);
  out.class_count = quotient.order;
  out.matches_homology = out.class_count == homology_order;
  if (quotient.order > 4096)
    throw SizeGuardError("cocycle class enumeration exceeds 4096 representatives");
  for (const auto& rep : quotient.enumerate(modulus))
    out.representatives.push_back(cochain_from_vector(g, n, rep, modulus, true));
  return out;
}

LoopTwoCochain::LoopTwoCochain(GroupPtr group) : group_(std::move(group)) {
  if (!group_) throw PreconditionError("loop cochain needs a group");
  n_ = group_->order();
  if (n_ > 100) throw SizeGuardError("loop cochain table exceeds 100^3 entries");
  values_.assign(n_ * n_ * n_, Phase());
}

bool LoopTwoCochain::normalized() const {
  const std::size_t e = group_->identity();
  for (std::size_t x = 0; x < n_; ++x)
    for (std::size_t g = 0; g < n_; ++g) {
      if (!at(x, g, e).is_zero()) return false;
      if (!at(x, e, g).is_zero()) return false;
    }
  return true;
}

bool LoopTwoCochain::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Phase& p) { return p.is_zero(); });
}

LoopTwoCochain LoopTwoCochain::operator+(const LoopTwoCochain& rhs) const {
  if (!(*group_ == *rhs.group_))
    throw PreconditionError("loop cochain arithmetic requires matching groups");
  LoopTwoCochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] + rhs.values_[i];
  return out;
}

LoopTwoCochain LoopTwoCochain::operator-(const LoopTwoCochain& rhs) const {
  if (!(*group_ == *rhs.group_))
    throw PreconditionError("loop cochain arithmetic requires matching groups");
  LoopTwoCochain out = *this;
  for (std::size_t i = 0; i < values_.size(); ++i) out.values_[i] = values_[i] - rhs.values_[i];
  return out;
}

bool LoopTwoCochain::operator==(const LoopTwoCochain& rhs) const {
  return *group_ == *rhs.group_ && values_ == rhs.values_;
}

bool is_loop_two_cocycle(const LoopTwoCochain& w) {
  const auto& gr = *w.group();
  const std::size_t n = gr.order();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t y = gr.conj(g, x);
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t k = 0; k < n; ++k) {
          Phase lhs = w.at(x, g, h) + w.at(x, gr.mul(h, g), k);
          Phase rhs = w.at(y, h, k) + w.at(x, g, gr.mul(k, h));
          if (!(lhs == rhs)) return false;
        }
    }
  return true;
}

}  // namespace fgt

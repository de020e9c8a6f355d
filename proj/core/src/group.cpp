#include "fgt/group.hpp"

#include <algorithm>
#include <map>

#include "fgt/errors.hpp"

namespace fgt {

namespace {

std::string axiom_error(const std::string& name, const std::string& detail) {
  return "group '" + name + "': " + detail;
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table)
    : name_(std::move(name)), table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw ValidationError(axiom_error(name_, "empty multiplication table"));
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[a].size() != n)
      throw ValidationError(axiom_error(name_, "table row " + std::to_string(a) + " has wrong length"));
    for (std::size_t b = 0; b < n; ++b)
      if (table_[a][b] >= n)
        throw ValidationError(axiom_error(
            name_, "closure fails at (" + std::to_string(a) + "," + std::to_string(b) + ")"));
  }
  for (std::size_t a = 0; a < n; ++a) {
    if (table_[0][a] != a || table_[a][0] != a)
      throw ValidationError(axiom_error(name_, "element 0 is not a two-sided identity at " + std::to_string(a)));
  }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (table_[a][b] == 0 && table_[b][a] == 0) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] == n)
      throw ValidationError(axiom_error(name_, "element " + std::to_string(a) + " has no two-sided inverse"));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw ValidationError(axiom_error(name_, "associativity fails at (" + std::to_string(a) + "," +
                                                       std::to_string(b) + "," + std::to_string(c) + ")"));
}

FiniteGroup FiniteGroup::from_table(std::string name, std::vector<std::vector<std::size_t>> table) {
  return FiniteGroup(std::move(name), std::move(table));
}

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic group order must be positive");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  return FiniteGroup("Z/" + std::to_string(n), std::move(table));
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<std::vector<std::size_t>>& generators,
                                           std::string name) {
  if (generators.empty()) throw ValidationError("permutation group needs at least one generator");
  const std::size_t k = generators[0].size();
  for (const auto& g : generators) {
    if (g.size() != k) throw ValidationError("permutation generators act on different sets");
    std::vector<bool> seen(k, false);
    for (std::size_t i : g) {
      if (i >= k || seen[i]) throw ValidationError("generator is not a permutation");
      seen[i] = true;
    }
  }
  std::vector<std::size_t> id(k);
  for (std::size_t i = 0; i < k; ++i) id[i] = i;

  std::vector<std::vector<std::size_t>> elements{id};
  std::map<std::vector<std::size_t>, std::size_t> index{{id, 0}};
  // mul(a, b) acts as a after b on points: (a*b)(i) = a(b(i)).
  auto compose = [](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  };
  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (const auto& g : generators) {
      auto next = compose(g, elements[head]);
      if (index.emplace(next, elements.size()).second) elements.push_back(std::move(next));
      if (elements.size() > 100000) throw SizeGuardError("permutation closure exceeds 100000 elements");
    }
  }
  const std::size_t n = elements.size();
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) table[a][b] = index.at(compose(elements[a], elements[b]));
  return FiniteGroup(std::move(name), std::move(table));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t na = a.order(), nb = b.order(), n = na * nb;
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      table[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  return FiniteGroup(a.name() + "x" + b.name(), std::move(table));
}

bool FiniteGroup::is_abelian() const {
  const std::size_t n = order();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (table_[a][b] != table_[b][a]) return false;
  return true;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1, x = a;
  while (x != 0) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

ConjugacyData FiniteGroup::conjugacy() const {
  const std::size_t n = order();
  ConjugacyData out;
  out.class_of.assign(n, n);
  out.centralizers.resize(n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t g = 0; g < n; ++g)
      if (conj(g, x) == x) out.centralizers[x].push_back(g);
  for (std::size_t x = 0; x < n; ++x) {
    if (out.class_of[x] != n) continue;
    std::vector<std::size_t> cls;
    for (std::size_t g = 0; g < n; ++g) {
      std::size_t y = conj(g, x);
      if (out.class_of[y] == n) {
        out.class_of[y] = out.classes.size();
        cls.push_back(y);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace fgt

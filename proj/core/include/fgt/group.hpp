#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

namespace fgt {

struct ConjugacyData {
  std::vector<std::vector<std::size_t>> classes;      // ordered by smallest member
  std::vector<std::size_t> class_of;                  // element -> class index
  std::vector<std::vector<std::size_t>> centralizers; // per element, ascending
};

/// Finite group given extensionally by its multiplication table. Element 0 is
/// the identity; mul(a, b) is the product a*b. Construction validates closure,
/// the identity, two-sided inverses and associativity, reporting the first
/// violated axiom.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::string name, std::vector<std::vector<std::size_t>> table);
  static FiniteGroup cyclic(std::size_t n);
  /// Closure of permutation generators (images of 0..k-1). Element 0 is the
  /// identity; the rest appear in breadth-first discovery order.
  static FiniteGroup from_permutations(const std::vector<std::vector<std::size_t>>& generators,
                                       std::string name = "perm-group");
  static FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

  std::size_t order() const { return table_.size(); }
  std::size_t identity() const { return 0; }
  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a][b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  /// g x g^-1.
  std::size_t conj(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }
  bool is_abelian() const;
  std::size_t element_order(std::size_t a) const;

  const std::string& name() const { return name_; }
  const std::vector<std::vector<std::size_t>>& table() const { return table_; }
  ConjugacyData conjugacy() const;

  bool operator==(const FiniteGroup& rhs) const { return table_ == rhs.table_; }

 private:
  FiniteGroup(std::string name, std::vector<std::vector<std::size_t>> table);

  std::string name_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

}  // namespace fgt

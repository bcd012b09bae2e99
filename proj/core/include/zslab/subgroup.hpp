#pragma once

#include <span>
#include <vector>

#include "zslab/element_set.hpp"
#include "zslab/group.hpp"

namespace zslab {

class Subgroup {
 public:
  // Members are trusted to form a subgroup; use subgroup_from_members() to
  // validate an arbitrary set.
  Subgroup(ElementSet members, std::vector<ElementId> generators);

  const AbelianGroup& group() const noexcept { return members_.group(); }
  const ElementSet& members() const noexcept { return members_; }
  int order() const noexcept { return order_; }
  std::span<const ElementId> generators() const noexcept { return generators_; }

  bool contains(ElementId id) const noexcept { return members_.contains(id); }
  bool is_trivial() const noexcept { return order_ == 1; }
  bool is_whole() const noexcept { return order_ == group().order(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept { return a.members_ == b.members_; }

 private:
  ElementSet members_;
  std::vector<ElementId> generators_;
  int order_;
};

// Ordering used for reports: by order, then lex_less on the member sets.
bool subgroup_less(const Subgroup& a, const Subgroup& b);

Subgroup trivial_subgroup(const AbelianGroup& group);
Subgroup whole_group(const AbelianGroup& group);
Subgroup cyclic_subgroup(const AbelianGroup& group, ElementId g);
Subgroup generated_subgroup(const AbelianGroup& group, std::span<const ElementId> generators);
// Closure of H u K under addition, i.e. H + K.
Subgroup join(const Subgroup& h, const Subgroup& k);

// Full scan: contains 0, closed under addition and negation.
bool is_subgroup(const ElementSet& members);
// Validates closure and derives a small generating set; throws InvalidInput
// if the set is not a subgroup.
Subgroup subgroup_from_members(const ElementSet& members);

// {g : m*g = 0}
Subgroup torsion_subgroup(const AbelianGroup& group, int m);

inline constexpr int kDefaultEnumerationBound = 10000;
inline constexpr std::size_t kMaxSubgroupCount = 200000;

// Every subgroup exactly once, sorted with subgroup_less. Seeds with the
// cyclic subgroups and joins pairs until a fixpoint. Throws
// EnumerationBudgetExceeded for |G| > max_order or too many subgroups.
std::vector<Subgroup> all_subgroups(const AbelianGroup& group, int max_order = kDefaultEnumerationBound);

/// Subgroup list plus, for each element, the proper subgroups containing it.
/// Regularity checks and the exhaustive searches run off this table.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const AbelianGroup& group, int max_order = kDefaultEnumerationBound);

  const AbelianGroup& group() const noexcept { return group_; }
  std::span<const Subgroup> subgroups() const noexcept { return subgroups_; }
  // Indices into subgroups() of the proper subgroups containing id, ascending.
  std::span<const int> proper_containing(ElementId id) const noexcept { return containing_[id]; }
  // |H| - 1 for proper subgroups; whole group gets its order (unbounded).
  int capacity(int subgroup) const noexcept { return capacity_[subgroup]; }

 private:
  AbelianGroup group_;
  std::vector<Subgroup> subgroups_;
  std::vector<std::vector<int>> containing_;
  std::vector<int> capacity_;
};

}  // namespace zslab

#include "zslab/subgroup.hpp"

#include <algorithm>
#include <unordered_map>

#include "zslab/error.hpp"

namespace zslab {

Subgroup::Subgroup(ElementSet members, std::vector<ElementId> generators)
    : members_(std::move(members)), generators_(std::move(generators)), order_(members_.count()) {}

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return lex_less(a.members(), b.members());
}

Subgroup trivial_subgroup(const AbelianGroup& group) {
  ElementSet members(group);
  members.insert(group.zero());
  return Subgroup(std::move(members), {});
}

Subgroup whole_group(const AbelianGroup& group) {
  std::vector<ElementId> gens;
  for (int axis = 0, stride = 1; axis < group.rank(); ++axis) {
    gens.push_back(stride);
    stride *= group.invariant_factors()[axis];
  }
  return Subgroup(ElementSet::full(group), std::move(gens));
}

Subgroup cyclic_subgroup(const AbelianGroup& group, ElementId g) {
  if (!group.contains(g)) throw Error(ErrorCode::InvalidElement, "index " + std::to_string(g) + " out of range");
  ElementSet members(group);
  ElementId x = group.zero();
  do {
    members.insert(x);
    x = group.add(x, g);
  } while (x != group.zero());
  std::vector<ElementId> gens;
  if (g != group.zero()) gens.push_back(g);
  return Subgroup(std::move(members), std::move(gens));
}

namespace {

// H + K as a member set: union of the cosets H + k, one per new coset.
ElementSet coset_union(const ElementSet& h, const ElementSet& k) {
  ElementSet out = h;
  for (const ElementId x : k.elements()) {
    if (!out.contains(x)) out |= h.translate(x);
  }
  return out;
}

}  // namespace

Subgroup generated_subgroup(const AbelianGroup& group, std::span<const ElementId> generators) {
  ElementSet members = trivial_subgroup(group).members();
  std::vector<ElementId> kept;
  for (const ElementId g : generators) {
    if (members.contains(g)) continue;
    members = coset_union(members, cyclic_subgroup(group, g).members());
    kept.push_back(g);
  }
  return Subgroup(std::move(members), std::move(kept));
}

Subgroup join(const Subgroup& h, const Subgroup& k) {
  if (!(h.group() == k.group())) throw Error(ErrorCode::InvalidInput, "join of subgroups of different groups");
  ElementSet members = coset_union(h.members(), k.members());
  std::vector<ElementId> gens(h.generators().begin(), h.generators().end());
  ElementSet span = h.members();
  for (const ElementId g : k.generators()) {
    if (span.contains(g)) continue;
    span = coset_union(span, cyclic_subgroup(h.group(), g).members());
    gens.push_back(g);
  }
  return Subgroup(std::move(members), std::move(gens));
}

bool is_subgroup(const ElementSet& members) {
  const AbelianGroup& group = members.group();
  if (!members.contains(group.zero())) return false;
  const auto elems = members.elements();
  for (const ElementId a : elems) {
    if (!members.contains(group.neg(a))) return false;
    for (const ElementId b : elems) {
      if (!members.contains(group.add(a, b))) return false;
    }
  }
  return true;
}

Subgroup subgroup_from_members(const ElementSet& members) {
  if (!is_subgroup(members)) throw Error(ErrorCode::InvalidInput, "set is not a subgroup");
  const auto elems = members.elements();
  Subgroup out = generated_subgroup(members.group(), elems);
  if (!(out.members() == members)) throw Error(ErrorCode::Internal, "generator extraction mismatch");
  return out;
}

Subgroup torsion_subgroup(const AbelianGroup& group, int m) {
  ElementSet members(group);
  for (ElementId g = 0; g < group.order(); ++g) {
    if (group.scalar_mul(m, g) == group.zero()) members.insert(g);
  }
  return subgroup_from_members(members);
}

std::vector<Subgroup> all_subgroups(const AbelianGroup& group, int max_order) {
  if (group.order() > max_order) {
    throw Error(ErrorCode::EnumerationBudgetExceeded, "group of order " + std::to_string(group.order()) +
                                                          " exceeds enumeration bound " + std::to_string(max_order));
  }
  std::vector<Subgroup> found;
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> seen;
  auto record = [&](Subgroup s) {
    if (seen.contains(s.members())) return;
    if (found.size() >= kMaxSubgroupCount) {
      throw Error(ErrorCode::EnumerationBudgetExceeded,
                  "more than " + std::to_string(kMaxSubgroupCount) + " subgroups in " + group.literal());
    }
    seen.emplace(s.members(), found.size());
    found.push_back(std::move(s));
  };

  for (ElementId g = 0; g < group.order(); ++g) record(cyclic_subgroup(group, g));
  const std::size_t cyclic_count = found.size();

  // Every subgroup is a join of cyclic ones, so joining each discovered
  // subgroup with every cyclic subgroup reaches the whole lattice.
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (std::size_t c = 0; c < cyclic_count; ++c) {
      if (found[c].members().is_subset_of(found[i].members())) continue;
      record(join(found[i], found[c]));
    }
  }
  std::sort(found.begin(), found.end(), subgroup_less);
  return found;
}

SubgroupLattice::SubgroupLattice(const AbelianGroup& group, int max_order)
    : group_(group), subgroups_(all_subgroups(group, max_order)), containing_(group.order()) {
  capacity_.reserve(subgroups_.size());
  for (std::size_t s = 0; s < subgroups_.size(); ++s) {
    const Subgroup& h = subgroups_[s];
    capacity_.push_back(h.is_whole() ? h.order() : h.order() - 1);
    if (h.is_whole()) continue;
    for (const ElementId id : h.members().elements()) containing_[id].push_back(static_cast<int>(s));
  }
}

}  // namespace zslab

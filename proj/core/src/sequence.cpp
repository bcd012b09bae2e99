#include "zslab/sequence.hpp"

#include <algorithm>

#include "zslab/error.hpp"
#include "zslab/rng.hpp"

namespace zslab {

Sequence::Sequence(AbelianGroup group) : group_(std::move(group)), multiplicity_(group_.order(), 0) {}

Sequence Sequence::from_terms(const AbelianGroup& group, std::span<const ElementId> terms) {
  Sequence s(group);
  for (const ElementId id : terms) s.add(id);
  return s;
}

void Sequence::add(ElementId id, int count) {
  if (!group_.contains(id)) throw Error(ErrorCode::InvalidElement, "index " + std::to_string(id) + " out of range");
  if (count < 0) throw Error(ErrorCode::InvalidInput, "negative multiplicity");
  multiplicity_[id] += count;
  length_ += count;
}

void Sequence::remove(ElementId id, int count) {
  if (!group_.contains(id)) throw Error(ErrorCode::InvalidElement, "index " + std::to_string(id) + " out of range");
  if (count < 0 || multiplicity_[id] < count) throw Error(ErrorCode::InvalidInput, "removing absent terms");
  multiplicity_[id] -= count;
  length_ -= count;
}

std::vector<ElementId> Sequence::terms() const {
  std::vector<ElementId> out;
  out.reserve(length_);
  for (ElementId id = 0; id < group_.order(); ++id) out.insert(out.end(), multiplicity_[id], id);
  return out;
}

std::vector<ElementId> Sequence::support() const {
  std::vector<ElementId> out;
  for (ElementId id = 0; id < group_.order(); ++id) {
    if (multiplicity_[id]) out.push_back(id);
  }
  return out;
}

bool Sequence::divides(const Sequence& other) const {
  if (!(group_ == other.group_)) return false;
  for (std::size_t i = 0; i < multiplicity_.size(); ++i) {
    if (multiplicity_[i] > other.multiplicity_[i]) return false;
  }
  return true;
}

Sequence Sequence::operator*(const Sequence& other) const {
  if (!(group_ == other.group_)) throw Error(ErrorCode::InvalidInput, "product of sequences over different groups");
  Sequence out = *this;
  for (std::size_t i = 0; i < multiplicity_.size(); ++i) out.multiplicity_[i] += other.multiplicity_[i];
  out.length_ += other.length_;
  return out;
}

Sequence Sequence::without(const Sequence& other) const {
  if (!other.divides(*this)) throw Error(ErrorCode::InvalidInput, "sequence is not a subsequence");
  Sequence out = *this;
  for (std::size_t i = 0; i < multiplicity_.size(); ++i) out.multiplicity_[i] -= other.multiplicity_[i];
  out.length_ -= other.length_;
  return out;
}

bool multiplicity_less(const Sequence& a, const Sequence& b) {
  const auto ma = a.multiplicities();
  const auto mb = b.multiplicities();
  return std::lexicographical_compare(ma.begin(), ma.end(), mb.begin(), mb.end());
}

ElementId sigma_sum(const Sequence& s) {
  const AbelianGroup& g = s.group();
  ElementId total = g.zero();
  for (const ElementId id : s.support()) total = g.add(total, g.scalar_mul(s.multiplicity(id), id));
  return total;
}

ElementSet sigma_set(const Sequence& s) {
  ElementSet sums(s.group());
  for (const ElementId id : s.support()) {
    for (int k = 0; k < s.multiplicity(id); ++k) {
      sums |= sums.translate(id);
      sums.insert(id);
    }
  }
  return sums;
}

ElementSet sigma0_set(const Sequence& s) {
  ElementSet sums = sigma_set(s);
  sums.insert(s.group().zero());
  return sums;
}

Sequence restrict(const Sequence& s, const Subgroup& h) {
  if (!(s.group() == h.group())) throw Error(ErrorCode::InvalidInput, "subgroup of a different group");
  Sequence out(s.group());
  for (const ElementId id : s.support()) {
    if (h.contains(id)) out.add(id, s.multiplicity(id));
  }
  return out;
}

RegularityResult is_regular(const Sequence& s) { return is_regular(s, SubgroupLattice(s.group())); }

RegularityResult is_regular(const Sequence& s, const SubgroupLattice& lattice) {
  if (!(s.group() == lattice.group())) throw Error(ErrorCode::InvalidInput, "lattice of a different group");
  const auto subgroups = lattice.subgroups();
  std::vector<int> counts(subgroups.size(), 0);
  for (const ElementId id : s.support()) {
    for (const int h : lattice.proper_containing(id)) counts[h] += s.multiplicity(id);
  }
  // subgroups() is sorted by subgroup_less, so the first hit is the minimal one
  for (std::size_t h = 0; h < subgroups.size(); ++h) {
    if (subgroups[h].is_whole()) continue;
    if (counts[h] > lattice.capacity(static_cast<int>(h))) {
      return RegularityResult{false, subgroups[h], counts[h]};
    }
  }
  return {};
}

bool is_basis(const Sequence& s) { return sigma_set(s).is_full(); }

ElementSet missing_elements(const Sequence& s) { return sigma_set(s).complement(); }

Sequence random_regular(const AbelianGroup& group, int length, std::uint64_t seed) {
  return random_regular(SubgroupLattice(group), length, seed);
}

Sequence random_regular(const SubgroupLattice& lattice, int length, std::uint64_t seed, std::uint64_t max_restarts) {
  const AbelianGroup& group = lattice.group();
  if (length < 0) throw Error(ErrorCode::InvalidInput, "negative length");
  Rng rng(seed);
  std::vector<int> counts(lattice.subgroups().size(), 0);
  std::vector<ElementId> terms;
  terms.reserve(length);
  const auto nonzero = static_cast<std::uint64_t>(group.order() - 1);

  for (std::uint64_t restart = 0; restart <= max_restarts; ++restart) {
    std::fill(counts.begin(), counts.end(), 0);
    terms.clear();
    bool ok = true;
    while (ok && static_cast<int>(terms.size()) < length) {
      const auto g = static_cast<ElementId>(1 + uniform_below(rng, nonzero));
      for (const int h : lattice.proper_containing(g)) {
        if (++counts[h] > lattice.capacity(h)) ok = false;
      }
      terms.push_back(g);
    }
    if (ok) return Sequence::from_terms(group, terms);
  }
  throw Error(ErrorCode::RetryBudgetExceeded, "no regular sequence of length " + std::to_string(length) + " over " +
                                                  group.literal() + " after " + std::to_string(max_restarts) +
                                                  " restarts");
}

}  // namespace zslab

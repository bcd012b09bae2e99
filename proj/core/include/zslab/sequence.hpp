#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zslab/element_set.hpp"
#include "zslab/group.hpp"
#include "zslab/subgroup.hpp"

namespace zslab {

/// Finite multiset of group elements, kept as a multiplicity vector indexed by
/// element. Term order never matters to any operation here.
class Sequence {
 public:
  explicit Sequence(AbelianGroup group);

  static Sequence from_terms(const AbelianGroup& group, std::span<const ElementId> terms);

  const AbelianGroup& group() const noexcept { return group_; }
  int length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  int multiplicity(ElementId id) const noexcept { return multiplicity_[id]; }
  std::span<const int> multiplicities() const noexcept { return multiplicity_; }

  void add(ElementId id, int count = 1);
  void remove(ElementId id, int count = 1);

  // Terms listed with repetition in increasing index order.
  std::vector<ElementId> terms() const;
  // Elements with nonzero multiplicity.
  std::vector<ElementId> support() const;

  // T | S
  bool divides(const Sequence& other) const;
  // S * T
  Sequence operator*(const Sequence& other) const;
  // S * T^{-1}; requires T | S.
  Sequence without(const Sequence& other) const;

  friend bool operator==(const Sequence& a, const Sequence& b) noexcept {
    return a.group_ == b.group_ && a.multiplicity_ == b.multiplicity_;
  }

 private:
  AbelianGroup group_;
  std::vector<int> multiplicity_;
  int length_ = 0;
};

// Lexicographic order on multiplicity vectors.
bool multiplicity_less(const Sequence& a, const Sequence& b);

ElementId sigma_sum(const Sequence& s);
// Sums of all nonempty subsequences.
ElementSet sigma_set(const Sequence& s);
// sigma_set plus zero.
ElementSet sigma0_set(const Sequence& s);

// S_H: the terms of S lying in H.
Sequence restrict(const Sequence& s, const Subgroup& h);

struct RegularityResult {
  bool regular = true;
  // Smallest violating proper subgroup (subgroup_less order), if any.
  std::optional<Subgroup> violation;
  int terms_in_violation = 0;

  explicit operator bool() const noexcept { return regular; }
};

// Regular: at most |H| - 1 terms in every proper subgroup H. Any zero term
// violates the trivial subgroup.
RegularityResult is_regular(const Sequence& s);
RegularityResult is_regular(const Sequence& s, const SubgroupLattice& lattice);

bool is_basis(const Sequence& s);
ElementSet missing_elements(const Sequence& s);

inline constexpr std::uint64_t kRandomRegularRestarts = 1000000;

// Rejection sampler: uniform nonzero terms, restart on the first regularity
// violation. Deterministic in the seed. Throws RetryBudgetExceeded.
Sequence random_regular(const AbelianGroup& group, int length, std::uint64_t seed);
Sequence random_regular(const SubgroupLattice& lattice, int length, std::uint64_t seed,
                        std::uint64_t max_restarts = kRandomRegularRestarts);

}  // namespace zslab

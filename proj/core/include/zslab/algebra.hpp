#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"
#include "zslab/subgroup.hpp"

namespace zslab {

/// Prime field F_l with l = 1 (mod E), together with a primitive E-th root of
/// unity w. Every character of G takes values in <w>, so F_l splits G, and l
/// is coprime to |G| because every prime of |G| divides E < l.
struct SplittingField {
  std::uint32_t prime = 0;
  std::uint32_t root = 0;
  int exponent = 0;
  std::vector<std::uint32_t> root_powers;  // w^k for k in [0, E)

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept {
    const std::uint32_t s = a + b;
    return s >= prime ? s - prime : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept { return a >= b ? a - b : a + prime - b; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % prime);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
  std::uint32_t reduce(std::int64_t a) const noexcept;

  bool is_root_of_unity(std::uint32_t a) const noexcept { return a != 0 && pow(a, exponent) == 1; }
  // Smallest unit that is not an E-th root of unity, if F_l has one (it does
  // not when l = E + 1).
  std::optional<std::uint32_t> non_root_unit() const noexcept;
};

SplittingField make_splitting_field(int exponent);
SplittingField make_splitting_field(const AbelianGroup& group);

// Coefficient vector over F_l indexed by element.
struct GroupAlgebraElement {
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;
};

class GroupAlgebra {
 public:
  explicit GroupAlgebra(AbelianGroup group);
  GroupAlgebra(AbelianGroup group, SplittingField field);

  const AbelianGroup& group() const noexcept { return group_; }
  const SplittingField& field() const noexcept { return field_; }

  GroupAlgebraElement zero() const;
  GroupAlgebraElement monomial(ElementId g) const;  // X^g
  GroupAlgebraElement binomial(ElementId g, std::uint32_t a) const;  // X^g - a
  GroupAlgebraElement subgroup_sum(const Subgroup& h) const;  // sum over h in H of X^h

  GroupAlgebraElement add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  GroupAlgebraElement subtract(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  // Direct convolution; independent of spectrum().
  GroupAlgebraElement multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const;
  // prod_i (X^{terms[i]} - values[i])
  GroupAlgebraElement product_of_binomials(std::span<const ElementId> terms,
                                           std::span<const std::uint32_t> values) const;

  bool is_zero(const GroupAlgebraElement& a) const noexcept;

  // Value at chi: sum_g a_g * w^{pairing(g, chi)}.
  std::vector<std::uint32_t> spectrum(const GroupAlgebraElement& a) const;

  // L_alpha = {g : alpha (X^g - a) = 0 for some unit a}, i.e. the g whose
  // pairing is constant on the spectral support of alpha. Throws ZeroElement.
  Subgroup l_alpha(const GroupAlgebraElement& alpha) const;

 private:
  AbelianGroup group_;
  SplittingField field_;
};

/// Per-term choice of a_i: Kill(k) means a_i = w^k, which annihilates exactly
/// the characters with pairing(g_i, chi) = k; Free means a unit outside <w>,
/// which annihilates nothing.
struct VanishingAssignment {
  std::vector<ElementId> terms;         // Sequence::terms() order
  std::vector<std::optional<int>> kill;  // nullopt = Free
};

// True iff every character is annihilated by some Kill slot.
bool covers_all_characters(const AbelianGroup& group, const VanishingAssignment& assignment);

// Field values realizing an assignment. Free slots take the smallest non-root
// unit; when the field has none they take 1, which only annihilates more.
std::vector<std::uint32_t> assignment_values(const GroupAlgebra& algebra, const VanishingAssignment& assignment);

struct CoverSearchStats {
  std::uint64_t nodes = 0;
};

// Decides whether prod (X^{g_i} - a_i) = 0 for some units a_i. The product
// vanishes iff every character is killed by some term, and a non-root a_i
// kills nothing, so a_i ranges over <w> plus Free. Branches on the uncovered
// character with the fewest available killers. A returned assignment has been
// re-checked by multiplying out the product. Throws InvalidInput on empty S.
std::optional<VanishingAssignment> exists_vanishing_assignment(const Sequence& s, CoverSearchStats* stats = nullptr);
std::optional<VanishingAssignment> exists_vanishing_assignment(const Sequence& s, const GroupAlgebra& algebra,
                                                               CoverSearchStats* stats = nullptr);

struct WitnessSearchOptions {
  std::uint64_t node_budget = 0;  // 0 = unlimited
  double time_budget_seconds = 0;
  bool symmetry = true;  // automorphism reduction, C_p + C_p only
  int max_length = 64;
};

// A length-`length` sequence (nonzero terms, canonical order) admitting no
// vanishing assignment, or nullopt if none exists. Prefixes that already
// vanish are pruned since extending by Free slots keeps them vanishing.
// Throws BudgetExceeded.
std::optional<Sequence> nonvanishing_witness_search(const AbelianGroup& group, int length,
                                                    const WitnessSearchOptions& options = {});

struct CoveredCoset {
  ElementId representative = 0;  // g_0
  Subgroup subgroup;             // H = L_alpha
  GroupAlgebraElement product;   // alpha
};

// For alpha = prod (X^{g_i} - a_i) != 0 (a_i given per term in terms()
// order), returns g_0 with (g_0 + H) \ {0} in sigma(S), H = L_alpha, scanning
// cosets in index order. Also checks sigma(S h) contains g_0 + H for every h
// in H. Throws VanishingProduct if alpha = 0 and CosetNotFound if either
// containment fails.
CoveredCoset find_covered_coset(const Sequence& s, std::span<const std::uint32_t> values, const GroupAlgebra& algebra);

}  // namespace zslab

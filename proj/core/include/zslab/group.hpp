#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zslab {

// Index of a group element under the least-significant-first mixed-radix
// codec over the invariant factors.
using ElementId = std::int32_t;

struct GroupElement {
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

/// Finite abelian group C_{n_1} + ... + C_{n_r} in invariant-factor form,
/// n_1 | n_2 | ... | n_r, every n_i >= 2.
///
/// A group is an immutable handle: copies share the same tables, so passing
/// groups by value is cheap and safe across threads.
class AbelianGroup {
 public:
  // Normalizes an arbitrary diagonal presentation. Moduli equal to 1 are
  // dropped; an empty or all-ones list is rejected with InvalidGroup.
  static AbelianGroup from_moduli(std::span<const std::int64_t> moduli);
  static AbelianGroup from_moduli(std::initializer_list<std::int64_t> moduli);

  std::span<const int> invariant_factors() const noexcept;
  int order() const noexcept;
  int exponent() const noexcept;
  int rank() const noexcept;

  bool contains(ElementId id) const noexcept { return id >= 0 && id < order(); }

  ElementId index_of(const GroupElement& element) const;
  GroupElement element(ElementId id) const;
  int coordinate(ElementId id, int axis) const;

  ElementId zero() const noexcept { return 0; }
  ElementId add(ElementId a, ElementId b) const;
  ElementId sub(ElementId a, ElementId b) const { return add(a, neg(b)); }
  ElementId neg(ElementId a) const;
  ElementId scalar_mul(std::int64_t c, ElementId a) const;
  int order_of(ElementId a) const;

  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement scalar_mul(std::int64_t c, const GroupElement& a) const;
  int order_of(const GroupElement& a) const;

  // Character pairing: the exponent k in [0, E) with chi(g) = zeta_E^k, where
  // the dual group is identified with G through the invariant factors.
  int pairing(ElementId g, ElementId chi) const;

  // Comma-separated invariant factors, e.g. "3,15".
  std::string literal() const;

  friend bool operator==(const AbelianGroup& a, const AbelianGroup& b) noexcept;

 private:
  struct Data;
  explicit AbelianGroup(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

  std::shared_ptr<const Data> data_;
};

AbelianGroup make_group(std::span<const std::int64_t> moduli);

// Parses the group literal format ("3,15").
AbelianGroup parse_group_literal(const std::string& literal);

// Every group of order <= max_order of rank <= max_rank, in invariant-factor
// form, ordered by (order, factors).
std::vector<AbelianGroup> groups_up_to(int max_order, int max_rank = 8);

bool is_prime(std::int64_t n) noexcept;
int smallest_prime_factor(std::int64_t n) noexcept;

}  // namespace zslab

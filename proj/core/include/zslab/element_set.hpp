#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zslab/group.hpp"

namespace zslab {

/// Subset of a group, stored as a bitset over element indices.
class ElementSet {
 public:
  explicit ElementSet(AbelianGroup group);

  static ElementSet full(const AbelianGroup& group);
  static ElementSet of(const AbelianGroup& group, std::span<const ElementId> members);

  const AbelianGroup& group() const noexcept { return group_; }

  bool contains(ElementId id) const noexcept {
    return (words_[static_cast<std::size_t>(id) >> 6] >> (id & 63)) & 1u;
  }
  void insert(ElementId id) noexcept { words_[static_cast<std::size_t>(id) >> 6] |= std::uint64_t{1} << (id & 63); }
  void erase(ElementId id) noexcept { words_[static_cast<std::size_t>(id) >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

  int count() const noexcept;
  bool empty() const noexcept;
  bool is_full() const noexcept { return count() == group_.order(); }

  // g + A
  ElementSet translate(ElementId g) const;
  ElementSet complement() const;
  bool is_subset_of(const ElementSet& other) const;

  ElementSet& operator|=(const ElementSet& other);
  ElementSet& operator&=(const ElementSet& other);
  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.group_ == b.group_ && a.words_ == b.words_;
  }

  // Members in increasing index order.
  std::vector<ElementId> elements() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  // Order on sets by their sorted member lists, compared lexicographically.
  friend bool lex_less(const ElementSet& a, const ElementSet& b);

 private:
  AbelianGroup group_;
  std::vector<std::uint64_t> words_;
};

// A + B
ElementSet sumset(const ElementSet& a, const ElementSet& b);

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept;
};

}  // namespace zslab

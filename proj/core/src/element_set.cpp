#include "zslab/element_set.hpp"

#include <bit>

#include "zslab/error.hpp"

namespace zslab {

ElementSet::ElementSet(AbelianGroup group)
    : group_(std::move(group)), words_((static_cast<std::size_t>(group_.order()) + 63) / 64, 0) {}

ElementSet ElementSet::full(const AbelianGroup& group) {
  ElementSet s(group);
  for (ElementId id = 0; id < group.order(); ++id) s.insert(id);
  return s;
}

ElementSet ElementSet::of(const AbelianGroup& group, std::span<const ElementId> members) {
  ElementSet s(group);
  for (const ElementId id : members) {
    if (!group.contains(id)) throw Error(ErrorCode::InvalidElement, "index " + std::to_string(id) + " out of range");
    s.insert(id);
  }
  return s;
}

int ElementSet::count() const noexcept {
  int c = 0;
  for (const auto w : words_) c += std::popcount(w);
  return c;
}

bool ElementSet::empty() const noexcept {
  for (const auto w : words_) {
    if (w) return false;
  }
  return true;
}

ElementSet ElementSet::translate(ElementId g) const {
  ElementSet out(group_);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
      const auto id = static_cast<ElementId>(w * 64 + std::countr_zero(bits));
      out.insert(group_.add(id, g));
    }
  }
  return out;
}

ElementSet ElementSet::complement() const {
  ElementSet out(group_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  const int tail = group_.order() % 64;
  if (tail) out.words_.back() &= (std::uint64_t{1} << tail) - 1;
  return out;
}

bool ElementSet::is_subset_of(const ElementSet& other) const {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

ElementSet& ElementSet::operator|=(const ElementSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) {
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

std::vector<ElementId> ElementSet::elements() const {
  std::vector<ElementId> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    for (std::uint64_t bits = words_[w]; bits; bits &= bits - 1) {
      out.push_back(static_cast<ElementId>(w * 64 + std::countr_zero(bits)));
    }
  }
  return out;
}

bool lex_less(const ElementSet& a, const ElementSet& b) {
  // Let x be the smallest index in exactly one set; both lists agree before
  // x. The set holding x is smaller unless the other list ends right there.
  for (std::size_t w = 0; w < a.words_.size(); ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (!diff) continue;
    const std::uint64_t low = diff & (~diff + 1);
    const std::uint64_t above = ~(low | (low - 1));
    const ElementSet& other = (a.words_[w] & low) ? b : a;
    bool other_continues = false;
    for (std::size_t v = w; v < a.words_.size() && !other_continues; ++v) {
      other_continues = other.words_[v] & (v == w ? above : ~std::uint64_t{0});
    }
    return (a.words_[w] & low) ? other_continues : !other_continues;
  }
  return false;
}

ElementSet sumset(const ElementSet& a, const ElementSet& b) {
  if (!(a.group() == b.group())) throw Error(ErrorCode::InvalidInput, "sumset of sets over different groups");
  ElementSet out(a.group());
  for (const ElementId g : b.elements()) out |= a.translate(g);
  return out;
}

std::size_t ElementSetHash::operator()(const ElementSet& s) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto w : s.words()) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

}  // namespace zslab

#include <doctest.h>

#include <zslab/element_set.hpp>
#include <zslab/rng.hpp>

#include "oracles.hpp"

using namespace zslab;

namespace {

ElementSet random_set(const AbelianGroup& g, Rng& rng) {
  ElementSet s(g);
  for (ElementId id = 0; id < g.order(); ++id) {
    if (uniform_below(rng, 3) == 0) s.insert(id);
  }
  return s;
}

std::set<oracle::Coords> naive(const ElementSet& s) {
  std::set<oracle::Coords> out;
  for (const ElementId id : s.elements()) out.insert(oracle::coords_of(s.group(), id));
  return out;
}

}  // namespace

TEST_SUITE("element_set") {
  TEST_CASE("insert, erase, count across word boundaries") {
    const auto g = AbelianGroup::from_moduli({3, 45});
    ElementSet s(g);
    CHECK(s.empty());
    for (const ElementId id : {0, 63, 64, 127, 134}) s.insert(id);
    CHECK(s.count() == 5);
    CHECK(s.contains(64));
    s.erase(64);
    CHECK_FALSE(s.contains(64));
    CHECK(s.elements() == std::vector<ElementId>{0, 63, 127, 134});
    CHECK(ElementSet::full(g).is_full());
    CHECK(ElementSet::full(g).count() == 135);
  }

  TEST_CASE("complement masks bits beyond the group order") {
    const auto g = AbelianGroup::from_moduli({3, 15});
    ElementSet s = ElementSet::of(g, std::vector<ElementId>{1, 2, 44});
    const ElementSet c = s.complement();
    CHECK(c.count() == 42);
    CHECK((s | c).is_full());
    CHECK((s & c).empty());
    CHECK(ElementSet(g).complement().is_full());
  }

  TEST_CASE("translate and sumset agree with naive arithmetic") {
    Rng rng(7);
    for (const auto& moduli : {std::vector<std::int64_t>{3, 15}, {2, 4}, {70}, {2, 2, 2, 4}}) {
      const auto g = AbelianGroup::from_moduli(moduli);
      const oracle::NaiveGroup ng(g);
      for (int trial = 0; trial < 20; ++trial) {
        const ElementSet a = random_set(g, rng);
        const ElementSet b = random_set(g, rng);
        const auto x = static_cast<ElementId>(uniform_below(rng, g.order()));
        CHECK(naive(a.translate(x)) == oracle::sumset(ng, naive(a), {oracle::coords_of(g, x)}));
        CHECK(naive(sumset(a, b)) == oracle::sumset(ng, naive(a), naive(b)));
      }
    }
  }

  TEST_CASE("subset and lexicographic order") {
    const auto g = AbelianGroup::from_moduli({10});
    const auto a = ElementSet::of(g, std::vector<ElementId>{1, 3});
    const auto b = ElementSet::of(g, std::vector<ElementId>{1, 3, 5});
    const auto c = ElementSet::of(g, std::vector<ElementId>{1, 4});
    CHECK(a.is_subset_of(b));
    CHECK_FALSE(b.is_subset_of(a));
    // sorted member lists: [1,3] < [1,3,5] < [1,4]
    CHECK(lex_less(a, b));
    CHECK(lex_less(b, c));
    CHECK(lex_less(a, c));
    CHECK_FALSE(lex_less(c, a));
    CHECK_FALSE(lex_less(a, a));
  }

  TEST_CASE("hash distinguishes sets") {
    const auto g = AbelianGroup::from_moduli({10});
    ElementSetHash h;
    CHECK(h(ElementSet::of(g, std::vector<ElementId>{1})) != h(ElementSet::of(g, std::vector<ElementId>{2})));
  }
}

#include <doctest.h>

#include <zslab/algebra.hpp>
#include <zslab/error.hpp>
#include <zslab/rng.hpp>

#include "oracles.hpp"

using namespace zslab;

namespace {

GroupAlgebraElement random_element(const GroupAlgebra& alg, Rng& rng) {
  GroupAlgebraElement a = alg.zero();
  for (auto& c : a.coeffs) c = static_cast<std::uint32_t>(uniform_below(rng, alg.field().prime));
  return a;
}

// Reference convolution written against the coordinate oracle.
GroupAlgebraElement naive_multiply(const GroupAlgebra& alg, const GroupAlgebraElement& a,
                                   const GroupAlgebraElement& b) {
  const AbelianGroup& g = alg.group();
  const oracle::NaiveGroup ng(g);
  GroupAlgebraElement out = alg.zero();
  const std::uint64_t l = alg.field().prime;
  for (ElementId x = 0; x < g.order(); ++x) {
    for (ElementId y = 0; y < g.order(); ++y) {
      const ElementId z = oracle::id_of(g, ng.add(oracle::coords_of(g, x), oracle::coords_of(g, y)));
      out.coeffs[z] = static_cast<std::uint32_t>((out.coeffs[z] + std::uint64_t{a.coeffs[x]} * b.coeffs[y]) % l);
    }
  }
  return out;
}

std::vector<std::uint32_t> random_units(const GroupAlgebra& alg, std::size_t n, Rng& rng) {
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = static_cast<std::uint32_t>(1 + uniform_below(rng, alg.field().prime - 1));
  return v;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("splitting fields") {
    CHECK(make_splitting_field(15).prime == 31);
    CHECK(make_splitting_field(6).prime == 7);
    CHECK(make_splitting_field(2).prime == 3);
    CHECK(make_splitting_field(5).prime == 11);
    CHECK(make_splitting_field(9).prime == 19);
    for (int e = 1; e <= 40; ++e) {
      const SplittingField f = make_splitting_field(e);
      REQUIRE(f.prime % e == 1 % e);
      REQUIRE(oracle::smallest_prime_1_mod(e) == static_cast<long>(f.prime));
      // w has order exactly e
      for (int k = 1; k < e; ++k) REQUIRE(f.pow(f.root, k) != 1);
      REQUIRE(f.pow(f.root, e) == 1);
      REQUIRE(f.root_powers.size() == static_cast<std::size_t>(e));
      REQUIRE(f.non_root_unit().has_value() == (f.prime != static_cast<std::uint32_t>(e) + 1));
      if (auto u = f.non_root_unit()) REQUIRE_FALSE(f.is_root_of_unity(*u));
    }
  }

  TEST_CASE("convolution matches the reference and the spectrum is multiplicative") {
    Rng rng(3);
    for (const auto& moduli : {std::vector<std::int64_t>{3, 3}, {2, 4}, {6}, {3, 15}}) {
      const GroupAlgebra alg(AbelianGroup::from_moduli(moduli));
      for (int trial = 0; trial < 5; ++trial) {
        const auto a = random_element(alg, rng);
        const auto b = random_element(alg, rng);
        const auto ab = alg.multiply(a, b);
        REQUIRE(ab == naive_multiply(alg, a, b));
        const auto sa = alg.spectrum(a);
        const auto sb = alg.spectrum(b);
        const auto sab = alg.spectrum(ab);
        for (std::size_t i = 0; i < sab.size(); ++i) REQUIRE(sab[i] == alg.field().mul(sa[i], sb[i]));
        REQUIRE(alg.is_zero(alg.subtract(alg.add(a, b), b)) == alg.is_zero(a));
      }
      // the spectrum determines the element
      CHECK(alg.is_zero(alg.zero()));
      const auto sz = alg.spectrum(alg.monomial(0));
      CHECK(std::all_of(sz.begin(), sz.end(), [](std::uint32_t v) { return v == 1; }));
    }
  }

  TEST_CASE("subgroup sums are idempotent up to the order") {
    const auto g = AbelianGroup::from_moduli({3, 15});
    const GroupAlgebra alg(g);
    const Subgroup h = torsion_subgroup(g, 5);
    const auto s = alg.subgroup_sum(h);
    auto scaled = s;
    for (auto& c : scaled.coeffs) c = alg.field().mul(c, static_cast<std::uint32_t>(h.order()));
    CHECK(alg.multiply(s, s) == scaled);
  }

  TEST_CASE("custom fields must split the group") {
    const auto g = AbelianGroup::from_moduli({3, 15});
    CHECK_THROWS_AS(GroupAlgebra(g, make_splitting_field(5)), Error);
    CHECK_NOTHROW(GroupAlgebra(g, make_splitting_field(30)));
  }

  TEST_CASE("L_alpha matches trying every unit") {
    Rng rng(17);
    for (const auto& moduli : {std::vector<std::int64_t>{3, 3}, {2, 6}, {10}}) {
      const auto g = AbelianGroup::from_moduli(moduli);
      const GroupAlgebra alg(g);
      for (int trial = 0; trial < 20; ++trial) {
        Sequence s(g);
        const int len = 1 + static_cast<int>(uniform_below(rng, 4));
        for (int i = 0; i < len; ++i) s.add(static_cast<ElementId>(uniform_below(rng, g.order())));
        const auto terms = s.terms();
        const auto values = random_units(alg, terms.size(), rng);
        const auto alpha = alg.product_of_binomials(terms, values);
        if (alg.is_zero(alpha)) {
          CHECK_THROWS_AS(alg.l_alpha(alpha), Error);
          continue;
        }
        const Subgroup h = alg.l_alpha(alpha);
        for (ElementId x = 0; x < g.order(); ++x) {
          bool kills = false;
          for (std::uint32_t a = 1; a < alg.field().prime && !kills; ++a) {
            kills = alg.is_zero(alg.multiply(alpha, alg.binomial(x, a)));
          }
          REQUIRE(h.contains(x) == kills);
        }
      }
    }
  }

  TEST_CASE("two rows and two columns leave a character uncovered") {
    const auto g = AbelianGroup::from_moduli({3, 3});
    const ElementId e1 = g.index_of(GroupElement{{1, 0}});
    const ElementId e2 = g.index_of(GroupElement{{0, 1}});
    CHECK_FALSE(exists_vanishing_assignment(Sequence::from_terms(g, std::vector<ElementId>{e1, e1, e2, e2})));
    const auto found = exists_vanishing_assignment(Sequence::from_terms(g, std::vector<ElementId>{e1, e1, e1, e2}));
    REQUIRE(found);
    CHECK(covers_all_characters(g, *found));
    const GroupAlgebra alg(g);
    CHECK(alg.is_zero(alg.product_of_binomials(found->terms, assignment_values(alg, *found))));
  }

  TEST_CASE("vanishing decision matches exhaustive expansion") {
    Rng rng(23);
    std::vector<AbelianGroup> groups;
    for (const auto& g : groups_up_to(36)) {
      if (g.exponent() <= 6) groups.push_back(g);
    }
    for (int trial = 0; trial < 80; ++trial) {
      const auto& g = groups[uniform_below(rng, groups.size())];
      Sequence s(g);
      const int len = 1 + static_cast<int>(uniform_below(rng, 4));
      for (int i = 0; i < len; ++i) s.add(static_cast<ElementId>(uniform_below(rng, g.order())));
      const bool expected = oracle::product_can_vanish(oracle::NaiveGroup(g), oracle::coords_of(s));
      REQUIRE_MESSAGE(exists_vanishing_assignment(s).has_value() == expected, g.literal());
    }
  }

  TEST_CASE("Free slots fall back to 1 when every unit is a root of unity") {
    // exponent 2: l = 3 and both units are square roots of 1
    const auto g = AbelianGroup::from_moduli({2, 2});
    const GroupAlgebra alg(g);
    CHECK_FALSE(alg.field().non_root_unit());
    const auto found = exists_vanishing_assignment(Sequence::from_terms(g, std::vector<ElementId>{1, 1, 2, 2, 3}));
    REQUIRE(found);
    CHECK(alg.is_zero(alg.product_of_binomials(found->terms, assignment_values(alg, *found))));
  }

  TEST_CASE("empty sequence is rejected") {
    CHECK_THROWS_AS(exists_vanishing_assignment(Sequence(AbelianGroup::from_moduli({3}))), Error);
  }

  TEST_CASE("nonvanishing witnesses") {
    const auto c33 = AbelianGroup::from_moduli({3, 3});
    const auto c24 = AbelianGroup::from_moduli({2, 4});
    const auto w = nonvanishing_witness_search(c33, 4);
    REQUIRE(w);
    CHECK_FALSE(exists_vanishing_assignment(*w));
    CHECK_FALSE(nonvanishing_witness_search(c33, 5));
    CHECK(nonvanishing_witness_search(c24, 4));
    CHECK_FALSE(nonvanishing_witness_search(c24, 5));
    WitnessSearchOptions plain;
    plain.symmetry = false;
    CHECK_FALSE(nonvanishing_witness_search(c33, 5, plain));
    CHECK(nonvanishing_witness_search(c33, 4, plain));
  }

  TEST_CASE("witness search honours its node budget") {
    WitnessSearchOptions tight;
    tight.node_budget = 5;
    CHECK_THROWS_AS(nonvanishing_witness_search(AbelianGroup::from_moduli({3, 3}), 5, tight), BudgetExceeded);
  }

  TEST_CASE("covered coset for random nonzero products") {
    Rng rng(29);
    const auto g = AbelianGroup::from_moduli({3, 15});
    const GroupAlgebra alg(g);
    const oracle::NaiveGroup ng(g);
    int checked = 0;
    while (checked < 60) {
      Sequence s(g);
      const int len = 1 + static_cast<int>(uniform_below(rng, 10));
      for (int i = 0; i < len; ++i) s.add(static_cast<ElementId>(uniform_below(rng, g.order())));
      const auto values = random_units(alg, s.length(), rng);
      if (alg.is_zero(alg.product_of_binomials(s.terms(), values))) {
        CHECK_THROWS_AS(find_covered_coset(s, values, alg), Error);
        continue;
      }
      const CoveredCoset c = find_covered_coset(s, values, alg);
      const auto sums = oracle::subset_sums(ng, oracle::coords_of(s));
      for (const ElementId h : c.subgroup.members().elements()) {
        const ElementId x = g.add(c.representative, h);
        if (x != g.zero()) REQUIRE(sums.count(oracle::coords_of(g, x)) == 1);
      }
      ++checked;
    }
  }
}

#pragma once

// Naive reference implementations used as test oracles. They work on raw
// coordinate vectors and only borrow the library's element numbering
// (element() / index_of()); all arithmetic is redone here.

#include <zslab/group.hpp>
#include <zslab/sequence.hpp>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

using Coords = std::vector<long>;

struct NaiveGroup {
  std::vector<long> factors;

  explicit NaiveGroup(const zslab::AbelianGroup& g) {
    for (const int f : g.invariant_factors()) factors.push_back(f);
  }

  long order() const {
    long n = 1;
    for (const long f : factors) n *= f;
    return n;
  }
  long exponent() const { return factors.back(); }
  Coords zero() const { return Coords(factors.size(), 0); }
  Coords add(const Coords& a, const Coords& b) const {
    Coords c(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) c[i] = (a[i] + b[i]) % factors[i];
    return c;
  }
  std::vector<Coords> elements() const {
    std::vector<Coords> out{zero()};
    for (std::size_t axis = 0; axis < factors.size(); ++axis) {
      std::vector<Coords> next;
      for (const Coords& c : out) {
        for (long v = 0; v < factors[axis]; ++v) {
          Coords d = c;
          d[axis] = v;
          next.push_back(d);
        }
      }
      out = std::move(next);
    }
    return out;
  }
};

inline std::vector<Coords> coords_of(const zslab::Sequence& s) {
  std::vector<Coords> out;
  for (const zslab::ElementId id : s.terms()) {
    const auto e = s.group().element(id).coords;
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

inline Coords coords_of(const zslab::AbelianGroup& g, zslab::ElementId id) {
  const auto e = g.element(id).coords;
  return Coords(e.begin(), e.end());
}

inline zslab::ElementId id_of(const zslab::AbelianGroup& g, const Coords& c) {
  return g.index_of(zslab::GroupElement{std::vector<std::int64_t>(c.begin(), c.end())});
}

// Sums over all 2^n - 1 nonempty index subsets.
inline std::set<Coords> subset_sums(const NaiveGroup& g, const std::vector<Coords>& terms) {
  std::set<Coords> sums;
  const std::uint32_t n = static_cast<std::uint32_t>(terms.size());
  for (std::uint32_t mask = 1; mask < (1U << n); ++mask) {
    Coords s = g.zero();
    for (std::uint32_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) s = g.add(s, terms[i]);
    }
    sums.insert(s);
  }
  return sums;
}

inline std::set<Coords> closure(const NaiveGroup& g, const std::vector<Coords>& gens) {
  std::set<Coords> out{g.zero()};
  std::vector<Coords> frontier{g.zero()};
  while (!frontier.empty()) {
    std::vector<Coords> next;
    for (const Coords& x : frontier) {
      for (const Coords& y : gens) {
        Coords z = g.add(x, y);
        if (out.insert(z).second) next.push_back(z);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// Every subgroup of a rank-r group is generated by r elements.
inline std::set<std::set<Coords>> subgroups(const NaiveGroup& g) {
  const auto els = g.elements();
  std::set<std::set<Coords>> found;
  std::vector<Coords> gens(g.factors.size());
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == gens.size()) {
      found.insert(closure(g, gens));
      return;
    }
    for (const Coords& e : els) {
      gens[k] = e;
      rec(k + 1);
    }
  };
  rec(0);
  return found;
}

inline bool is_regular(const NaiveGroup& g, const std::vector<Coords>& terms,
                       const std::set<std::set<Coords>>& subs) {
  for (const auto& h : subs) {
    if (static_cast<long>(h.size()) == g.order()) continue;
    const long inside = std::count_if(terms.begin(), terms.end(), [&](const Coords& t) { return h.count(t) > 0; });
    if (inside > static_cast<long>(h.size()) - 1) return false;
  }
  return true;
}

inline std::set<Coords> stabilizer(const NaiveGroup& g, const std::set<Coords>& a) {
  std::set<Coords> out;
  for (const Coords& x : g.elements()) {
    bool keeps = true;
    for (const Coords& y : a) keeps = keeps && a.count(g.add(x, y)) > 0;
    if (keeps) out.insert(x);
  }
  return out;
}

inline std::set<Coords> sumset(const NaiveGroup& g, const std::set<Coords>& a, const std::set<Coords>& b) {
  std::set<Coords> out;
  for (const Coords& x : a) {
    for (const Coords& y : b) out.insert(g.add(x, y));
  }
  return out;
}

inline long smallest_prime_1_mod(long e) {
  for (long l = e + 1;; l += e) {
    bool prime = l > 1;
    for (long d = 2; d * d <= l; ++d) prime = prime && l % d != 0;
    if (prime) return l;
  }
}

// Tries every tuple of units a_i in F_l (l the smallest prime = 1 mod exp G)
// and multiplies prod (X^{g_i} - a_i) out in F_l[G] directly. Exponential;
// intended for |S| <= 5 and small l.
inline bool product_can_vanish(const NaiveGroup& g, const std::vector<Coords>& terms) {
  const long l = smallest_prime_1_mod(g.exponent());
  const auto els = g.elements();
  auto index = [&](const Coords& c) {
    long id = 0;
    for (std::size_t i = 0; i < c.size(); ++i) id = id * g.factors[i] + c[i];
    return id;
  };
  std::vector<std::vector<long>> shift(terms.size(), std::vector<long>(els.size()));
  for (std::size_t t = 0; t < terms.size(); ++t) {
    for (const Coords& e : els) shift[t][index(e)] = index(g.add(e, terms[t]));
  }
  std::vector<long> start(els.size(), 0);
  start[index(g.zero())] = 1;
  std::function<bool(std::size_t, const std::vector<long>&)> rec = [&](std::size_t t, const std::vector<long>& poly) {
    if (std::all_of(poly.begin(), poly.end(), [](long c) { return c == 0; })) return true;
    if (t == terms.size()) return false;
    for (long a = 1; a < l; ++a) {
      std::vector<long> next(poly.size(), 0);
      for (std::size_t i = 0; i < poly.size(); ++i) {
        if (!poly[i]) continue;
        next[shift[t][i]] = (next[shift[t][i]] + poly[i]) % l;
        next[i] = ((next[i] - a * poly[i]) % l + l) % l;
      }
      if (rec(t + 1, next)) return true;
    }
    return false;
  };
  return rec(0, start);
}

}  // namespace oracle

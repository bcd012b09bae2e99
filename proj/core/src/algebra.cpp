#include "zslab/algebra.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <string>

#include "zslab/error.hpp"

namespace zslab {

namespace {

constexpr std::uint64_t kPrimeSearchBound = 1000000;

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::uint32_t SplittingField::pow(std::uint32_t a, std::uint64_t e) const noexcept {
  std::uint64_t result = 1 % prime;
  std::uint64_t base = a % prime;
  while (e) {
    if (e & 1) result = result * base % prime;
    base = base * base % prime;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

std::uint32_t SplittingField::reduce(std::int64_t a) const noexcept {
  const std::int64_t r = a % static_cast<std::int64_t>(prime);
  return static_cast<std::uint32_t>(r < 0 ? r + prime : r);
}

std::optional<std::uint32_t> SplittingField::non_root_unit() const noexcept {
  for (std::uint32_t a = 2; a < prime; ++a) {
    if (!is_root_of_unity(a)) return a;
  }
  return std::nullopt;
}

SplittingField make_splitting_field(int exponent) {
  if (exponent < 1) throw Error(ErrorCode::InvalidInput, "exponent must be positive");
  SplittingField field;
  field.exponent = exponent;
  for (std::uint64_t k = 1; k <= kPrimeSearchBound; ++k) {
    const std::uint64_t candidate = k * static_cast<std::uint64_t>(exponent) + 1;
    if (candidate > 0xFFFFFFFFu) break;
    if (is_prime(static_cast<std::int64_t>(candidate))) {
      field.prime = static_cast<std::uint32_t>(candidate);
      break;
    }
  }
  if (!field.prime) throw Error(ErrorCode::Internal, "no prime = 1 mod " + std::to_string(exponent) + " found");

  const auto divisors = prime_divisors(exponent);
  for (std::uint32_t w = 1; w < field.prime; ++w) {
    if (field.pow(w, exponent) != 1) continue;
    const bool primitive = std::none_of(divisors.begin(), divisors.end(),
                                        [&](int p) { return field.pow(w, exponent / p) == 1; });
    if (primitive) {
      field.root = w;
      break;
    }
  }
  field.root_powers.resize(exponent);
  std::uint32_t x = 1;
  for (int k = 0; k < exponent; ++k) {
    field.root_powers[k] = x;
    x = field.mul(x, field.root);
  }
  return field;
}

SplittingField make_splitting_field(const AbelianGroup& group) { return make_splitting_field(group.exponent()); }

GroupAlgebra::GroupAlgebra(AbelianGroup group) : group_(std::move(group)), field_(make_splitting_field(group_)) {}

GroupAlgebra::GroupAlgebra(AbelianGroup group, SplittingField field)
    : group_(std::move(group)), field_(std::move(field)) {
  if (field_.exponent % group_.exponent() != 0) {
    throw Error(ErrorCode::InvalidInput, "field does not split the group");
  }
}

GroupAlgebraElement GroupAlgebra::zero() const { return {std::vector<std::uint32_t>(group_.order(), 0)}; }

GroupAlgebraElement GroupAlgebra::monomial(ElementId g) const {
  auto out = zero();
  out.coeffs.at(g) = 1;
  return out;
}

GroupAlgebraElement GroupAlgebra::binomial(ElementId g, std::uint32_t a) const {
  auto out = monomial(g);
  out.coeffs[0] = field_.sub(out.coeffs[0], a % field_.prime);
  return out;
}

GroupAlgebraElement GroupAlgebra::subgroup_sum(const Subgroup& h) const {
  auto out = zero();
  for (const ElementId id : h.members().elements()) out.coeffs[id] = 1;
  return out;
}

GroupAlgebraElement GroupAlgebra::add(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  auto out = zero();
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = field_.add(a.coeffs[i], b.coeffs[i]);
  return out;
}

GroupAlgebraElement GroupAlgebra::subtract(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  auto out = zero();
  for (std::size_t i = 0; i < out.coeffs.size(); ++i) out.coeffs[i] = field_.sub(a.coeffs[i], b.coeffs[i]);
  return out;
}

GroupAlgebraElement GroupAlgebra::multiply(const GroupAlgebraElement& a, const GroupAlgebraElement& b) const {
  const int n = group_.order();
  std::vector<ElementId> support_b;
  for (ElementId v = 0; v < n; ++v) {
    if (b.coeffs[v]) support_b.push_back(v);
  }
  auto out = zero();
  for (ElementId u = 0; u < n; ++u) {
    if (!a.coeffs[u]) continue;
    for (const ElementId v : support_b) {
      const ElementId w = group_.add(u, v);
      out.coeffs[w] = field_.add(out.coeffs[w], field_.mul(a.coeffs[u], b.coeffs[v]));
    }
  }
  return out;
}

GroupAlgebraElement GroupAlgebra::product_of_binomials(std::span<const ElementId> terms,
                                                       std::span<const std::uint32_t> values) const {
  if (terms.size() != values.size()) throw Error(ErrorCode::InvalidInput, "one value per term required");
  auto out = monomial(group_.zero());
  for (std::size_t i = 0; i < terms.size(); ++i) out = multiply(out, binomial(terms[i], values[i]));
  return out;
}

bool GroupAlgebra::is_zero(const GroupAlgebraElement& a) const noexcept {
  return std::all_of(a.coeffs.begin(), a.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

std::vector<std::uint32_t> GroupAlgebra::spectrum(const GroupAlgebraElement& a) const {
  const int n = group_.order();
  const int e = field_.exponent;
  const int scale = e / group_.exponent();
  std::vector<std::uint32_t> out(n, 0);
  for (ElementId chi = 0; chi < n; ++chi) {
    std::uint64_t acc = 0;
    for (ElementId g = 0; g < n; ++g) {
      if (!a.coeffs[g]) continue;
      const int k = group_.pairing(g, chi) * scale % e;
      acc = (acc + std::uint64_t{a.coeffs[g]} * field_.root_powers[k]) % field_.prime;
    }
    out[chi] = static_cast<std::uint32_t>(acc);
  }
  return out;
}

Subgroup GroupAlgebra::l_alpha(const GroupAlgebraElement& alpha) const {
  if (is_zero(alpha)) throw Error(ErrorCode::ZeroElement, "L_alpha of the zero element");
  const auto values = spectrum(alpha);
  std::vector<ElementId> support;
  for (ElementId chi = 0; chi < group_.order(); ++chi) {
    if (values[chi]) support.push_back(chi);
  }
  ElementSet members(group_);
  for (ElementId g = 0; g < group_.order(); ++g) {
    const int first = group_.pairing(g, support.front());
    const bool constant = std::all_of(support.begin(), support.end(),
                                      [&](ElementId chi) { return group_.pairing(g, chi) == first; });
    if (constant) members.insert(g);
  }
  if (!is_subgroup(members)) throw Error(ErrorCode::Internal, "L_alpha is not closed under addition");
  return subgroup_from_members(members);
}

bool covers_all_characters(const AbelianGroup& group, const VanishingAssignment& assignment) {
  for (ElementId chi = 0; chi < group.order(); ++chi) {
    bool killed = false;
    for (std::size_t i = 0; i < assignment.terms.size() && !killed; ++i) {
      killed = assignment.kill[i] && *assignment.kill[i] == group.pairing(assignment.terms[i], chi);
    }
    if (!killed) return false;
  }
  return true;
}

std::vector<std::uint32_t> assignment_values(const GroupAlgebra& algebra, const VanishingAssignment& assignment) {
  const SplittingField& f = algebra.field();
  const std::uint32_t free_value = f.non_root_unit().value_or(1);
  const int scale = f.exponent / algebra.group().exponent();
  std::vector<std::uint32_t> values;
  values.reserve(assignment.kill.size());
  for (const auto& k : assignment.kill) values.push_back(k ? f.root_powers[*k * scale % f.exponent] : free_value);
  return values;
}

namespace {

using Words = std::vector<std::uint64_t>;

/// Set-cover backtracking over characters. Each distinct term value d with
/// copies left may take one exponent k, killing the class
/// {chi : pairing(d, chi) = k}. After a branch (d, k) fails for a character,
/// later sibling branches forbid (d, k): any cover using it was already
/// explored.
class CoverSearch {
 public:
  CoverSearch(const AbelianGroup& group, const Sequence& s) : group_(group), n_(group.order()) {
    words_ = (static_cast<std::size_t>(n_) + 63) / 64;
    for (const ElementId g : s.support()) {
      Value v;
      v.element = g;
      v.copies = s.multiplicity(g);
      v.class_size = n_ / group.order_of(g);
      v.pairing.resize(n_);
      v.classes.assign(group.exponent(), Words(words_, 0));
      v.forbidden.assign(group.exponent(), 0);
      for (ElementId chi = 0; chi < n_; ++chi) {
        const int k = group.pairing(g, chi);
        v.pairing[chi] = k;
        v.classes[k][chi >> 6] |= std::uint64_t{1} << (chi & 63);
      }
      values_.push_back(std::move(v));
    }
  }

  std::optional<std::vector<std::pair<ElementId, int>>> solve(std::uint64_t& nodes) {
    Words uncovered(words_, 0);
    for (ElementId chi = 0; chi < n_; ++chi) uncovered[chi >> 6] |= std::uint64_t{1} << (chi & 63);
    if (recurse(uncovered, n_, nodes)) return chosen_;
    return std::nullopt;
  }

 private:
  struct Value {
    ElementId element = 0;
    int copies = 0;
    int class_size = 0;
    std::vector<int> pairing;
    std::vector<Words> classes;
    std::vector<char> forbidden;
  };

  int candidates(ElementId chi) const {
    int c = 0;
    for (const Value& v : values_) c += v.copies > 0 && !v.forbidden[v.pairing[chi]];
    return c;
  }

  bool recurse(const Words& uncovered, int remaining, std::uint64_t& nodes) {
    ++nodes;
    if (remaining == 0) return true;
    int capacity = 0;
    for (const Value& v : values_) capacity += v.copies * v.class_size;
    if (capacity < remaining) return false;

    // minimum remaining values; ties go to the smallest character index
    ElementId pick = -1;
    int best = 1 << 30;
    for (std::size_t w = 0; w < words_ && best > 0; ++w) {
      for (std::uint64_t bits = uncovered[w]; bits; bits &= bits - 1) {
        const auto chi = static_cast<ElementId>(w * 64 + std::countr_zero(bits));
        const int c = candidates(chi);
        if (c < best) {
          best = c;
          pick = chi;
          if (c == 0) break;
        }
      }
    }
    if (best == 0) return false;

    std::vector<std::pair<std::size_t, int>> banned;
    bool found = false;
    for (std::size_t d = 0; d < values_.size() && !found; ++d) {
      Value& v = values_[d];
      const int k = v.pairing[pick];
      if (v.copies == 0 || v.forbidden[k]) continue;
      Words next(words_);
      int left = 0;
      for (std::size_t w = 0; w < words_; ++w) {
        next[w] = uncovered[w] & ~v.classes[k][w];
        left += std::popcount(next[w]);
      }
      --v.copies;
      chosen_.emplace_back(v.element, k);
      found = recurse(next, left, nodes);
      if (!found) {
        chosen_.pop_back();
        ++v.copies;
        v.forbidden[k] = 1;
        banned.emplace_back(d, k);
      }
    }
    for (const auto& [d, k] : banned) values_[d].forbidden[k] = 0;
    return found;
  }

  const AbelianGroup& group_;
  int n_;
  std::size_t words_ = 0;
  std::vector<Value> values_;
  std::vector<std::pair<ElementId, int>> chosen_;
};

}  // namespace

std::optional<VanishingAssignment> exists_vanishing_assignment(const Sequence& s, CoverSearchStats* stats) {
  return exists_vanishing_assignment(s, GroupAlgebra(s.group()), stats);
}

std::optional<VanishingAssignment> exists_vanishing_assignment(const Sequence& s, const GroupAlgebra& algebra,
                                                               CoverSearchStats* stats) {
  if (s.empty()) throw Error(ErrorCode::InvalidInput, "vanishing assignment of an empty sequence");
  if (!(s.group() == algebra.group())) throw Error(ErrorCode::InvalidInput, "algebra of a different group");

  std::uint64_t nodes = 0;
  CoverSearch search(s.group(), s);
  const auto chosen = search.solve(nodes);
  if (stats) stats->nodes += nodes;
  if (!chosen) return std::nullopt;

  VanishingAssignment out;
  out.terms = s.terms();
  out.kill.assign(out.terms.size(), std::nullopt);
  for (const auto& [element, k] : *chosen) {
    // first still-free position holding this element
    for (std::size_t i = 0; i < out.terms.size(); ++i) {
      if (out.terms[i] == element && !out.kill[i]) {
        out.kill[i] = k;
        break;
      }
    }
  }
  const auto values = assignment_values(algebra, out);
  if (!algebra.is_zero(algebra.product_of_binomials(out.terms, values))) {
    throw Error(ErrorCode::Internal, "cover found but the product does not vanish");
  }
  return out;
}

std::optional<Sequence> nonvanishing_witness_search(const AbelianGroup& group, int length,
                                                    const WitnessSearchOptions& options) {
  if (length < 1 || length > options.max_length) {
    throw Error(ErrorCode::InvalidInput, "witness length must lie in [1, " + std::to_string(options.max_length) + "]");
  }
  const GroupAlgebra algebra(group);
  const auto start = std::chrono::steady_clock::now();
  std::uint64_t nodes = 0;
  int deepest = 0;
  Sequence current(group);

  auto check_budget = [&] {
    const bool over_nodes = options.node_budget && nodes > options.node_budget;
    const bool over_time =
        options.time_budget_seconds > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > options.time_budget_seconds;
    if (over_nodes || over_time) {
      SearchProgress progress;
      progress.nodes = nodes;
      progress.best_length = deepest;
      throw BudgetExceeded("nonvanishing witness search over " + group.literal() + " stopped after " +
                               std::to_string(nodes) + " nodes",
                           progress);
    }
  };

  // Zero terms always vanish (X^0 - 1 = 0), so only nonzero terms are tried.
  std::vector<ElementId> candidates;
  for (ElementId g = 1; g < group.order(); ++g) candidates.push_back(g);

  auto dfs = [&](auto&& self, std::size_t from) -> bool {
    ++nodes;
    if ((nodes & 63) == 0) check_budget();
    if (!current.empty()) {
      if (exists_vanishing_assignment(current, algebra)) return false;
      deepest = std::max(deepest, current.length());
    }
    if (current.length() == length) return true;
    for (std::size_t i = from; i < candidates.size(); ++i) {
      current.add(candidates[i]);
      if (self(self, i)) return true;
      current.remove(candidates[i]);
    }
    return false;
  };

  const auto factors = group.invariant_factors();
  const bool elementary_rank2 =
      options.symmetry && factors.size() == 2 && factors[0] == factors[1] && is_prime(factors[0]);
  if (!elementary_rank2) {
    if (dfs(dfs, 0)) return current;
    return std::nullopt;
  }

  // C_p + C_p: GL(2, p) acts transitively on pairs of independent elements, so
  // every sequence is equivalent to one inside <e1> containing e1, or to one
  // containing both e1 = (1,0) and e2 = (0,1).
  const int p = factors[0];
  const ElementId e1 = 1;
  const ElementId e2 = p;
  {
    std::vector<ElementId> line;
    for (ElementId g = 1; g < p; ++g) line.push_back(g);
    std::swap(candidates, line);
    current.add(e1);
    if (dfs(dfs, 0)) return current;
    current.remove(e1);
    std::swap(candidates, line);
  }
  if (length >= 2) {
    current.add(e1);
    current.add(e2);
    if (dfs(dfs, 0)) return current;
  }
  return std::nullopt;
}

CoveredCoset find_covered_coset(const Sequence& s, std::span<const std::uint32_t> values, const GroupAlgebra& algebra) {
  const AbelianGroup& group = s.group();
  if (!(group == algebra.group())) throw Error(ErrorCode::InvalidInput, "algebra of a different group");
  const auto terms = s.terms();
  if (values.size() != terms.size()) throw Error(ErrorCode::InvalidInput, "one field value per term required");
  for (const auto a : values) {
    if (a % algebra.field().prime == 0) throw Error(ErrorCode::InvalidInput, "field values must be units");
  }
  auto alpha = algebra.product_of_binomials(terms, values);
  if (algebra.is_zero(alpha)) throw Error(ErrorCode::VanishingProduct, "product of binomials is zero");

  Subgroup h = algebra.l_alpha(alpha);
  const ElementSet sums = sigma_set(s);
  const auto members = h.members().elements();

  std::vector<char> seen(group.order(), 0);
  std::optional<ElementId> representative;
  for (ElementId g0 = 0; g0 < group.order() && !representative; ++g0) {
    if (seen[g0]) continue;
    bool covered = true;
    for (const ElementId x : members) {
      const ElementId y = group.add(g0, x);
      seen[y] = 1;
      if (y != group.zero() && !sums.contains(y)) covered = false;
    }
    if (covered) representative = g0;
  }
  if (!representative) {
    throw Error(ErrorCode::CosetNotFound, "no coset of L_alpha (order " + std::to_string(h.order()) +
                                              ") minus 0 lies in sigma(S); |S| = " + std::to_string(s.length()) +
                                              ", |sigma(S)| = " + std::to_string(sums.count()) + ", group " +
                                              group.literal());
  }

  ElementSet coset(group);
  for (const ElementId x : members) coset.insert(group.add(*representative, x));
  for (const ElementId x : members) {
    Sequence extended = s;
    extended.add(x);
    if (!coset.is_subset_of(sigma_set(extended))) {
      throw Error(ErrorCode::CosetNotFound, "sigma(S h) misses part of g0 + H for h = index " + std::to_string(x) +
                                                ", g0 = index " + std::to_string(*representative));
    }
  }
  return CoveredCoset{*representative, std::move(h), std::move(alpha)};
}

}  // namespace zslab

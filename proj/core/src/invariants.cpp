#include "zslab/invariants.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "zslab/error.hpp"
#include "zslab/rng.hpp"

namespace zslab {

int davenport(const AbelianGroup& group, DavenportMode mode, const SearchLimits& limits) {
  if (mode == DavenportMode::Formula) {
    const auto f = group.invariant_factors();
    if (f.size() == 1) return f[0];
    if (f.size() == 2) return f[0] + f[1] - 1;
    throw Error(ErrorCode::FormulaUnavailable, "no closed form for the Davenport constant of rank " +
                                                   std::to_string(f.size()) + " group " + group.literal());
  }
  return *longest_zero_sumfree(group, limits).value + 1;
}

SearchReport longest_zero_sumfree(const AbelianGroup& group, const SearchLimits& limits, bool symmetry) {
  detail::MaxSearchSpec spec;
  spec.kind = detail::MaxSearchKind::ZeroSumFree;
  spec.symmetry = symmetry;
  // zero-sum-free sequences are shorter than |G|, so the cap never binds
  spec.cap = group.order();
  return detail::run_max_search(group, spec, limits);
}

SearchReport longest_regular_nonbasis(const AbelianGroup& group, const C0Options& options) {
  detail::MaxSearchSpec spec;
  spec.kind = detail::MaxSearchKind::RegularNonBasis;
  spec.cap = options.cap;
  spec.symmetry = options.symmetry;
  return detail::run_max_search(group, spec, options.limits);
}

int c0_exact(const AbelianGroup& group, const C0Options& options) {
  const SearchReport report = longest_regular_nonbasis(group, options);
  if (!report.value) {
    throw Error(ErrorCode::Internal, "length cap reached over " + group.literal() + "; c0 is unknown below the cap");
  }
  return *report.value + 1;
}

Subgroup stabilizer(const ElementSet& set) {
  if (set.empty()) throw Error(ErrorCode::EmptySet, "stabilizer of the empty set");
  const AbelianGroup& group = set.group();
  ElementSet members(group);
  for (ElementId g = 0; g < group.order(); ++g) {
    if (set.translate(g) == set) members.insert(g);
  }
  return subgroup_from_members(members);
}

KneserReport kneser_check(std::span<const ElementSet> sets) {
  if (sets.empty()) throw Error(ErrorCode::EmptySet, "no sets given");
  for (const ElementSet& a : sets) {
    if (a.empty()) throw Error(ErrorCode::EmptySet, "empty summand");
    if (!(a.group() == sets[0].group())) throw Error(ErrorCode::InvalidInput, "summands over different groups");
  }
  ElementSet sum = sets[0];
  for (std::size_t i = 1; i < sets.size(); ++i) sum = sumset(sum, sets[i]);
  Subgroup h = stabilizer(sum);
  long rhs = -static_cast<long>(sets.size() - 1) * h.order();
  for (const ElementSet& a : sets) rhs += sumset(a, h.members()).count();
  const long lhs = sum.count();
  return KneserReport{std::move(sum), std::move(h), lhs, rhs, lhs >= rhs};
}

KneserFuzzReport kneser_fuzz(std::uint64_t cases, std::uint64_t seed, int max_order, int max_sets) {
  if (max_order < 2 || max_sets < 1) throw Error(ErrorCode::InvalidInput, "kneser fuzz needs max_order >= 2, max_sets >= 1");
  const std::vector<AbelianGroup> groups = groups_up_to(max_order);
  KneserFuzzReport report;
  report.cases = cases;
  for (std::uint64_t i = 0; i < cases; ++i) {
    Rng rng(seed + i);
    const AbelianGroup& group = groups[uniform_below(rng, groups.size())];
    const auto r = 1 + uniform_below(rng, static_cast<std::uint64_t>(max_sets));
    std::vector<ElementSet> sets;
    for (std::uint64_t k = 0; k < r; ++k) {
      std::vector<ElementId> ids(group.order());
      std::iota(ids.begin(), ids.end(), 0);
      const auto size = 1 + uniform_below(rng, ids.size());
      for (std::size_t j = 0; j < size; ++j) std::swap(ids[j], ids[j + uniform_below(rng, ids.size() - j)]);
      ids.resize(size);
      sets.push_back(ElementSet::of(group, ids));
    }
    const KneserReport check = kneser_check(sets);
    if (!check.holds) report.failures.push_back({i, std::move(sets), check.lhs, check.rhs});
  }
  return report;
}

Rank2InverseReport rank2_inverse_check(int p, const SearchLimits& limits) {
  if (!is_prime(p)) throw Error(ErrorCode::PreconditionFailed, std::to_string(p) + " is not prime");
  const AbelianGroup group = AbelianGroup::from_moduli({p, p});
  Rank2InverseReport report;
  report.p = p;
  report.length = 2 * p - 2;
  detail::EnumerationSpec spec;
  spec.length = report.length;
  spec.collect = detail::Collect::Sigma0Below;
  spec.threshold = p * p - 1;
  auto found = detail::enumerate_regular(group, spec, limits);
  report.checked = found.visited;
  report.violations = std::move(found.collected);
  report.holds = report.violations.empty();
  return report;
}

CyclicInverseReport cyclic_inverse_check(int n, const SearchLimits& limits) {
  if (n < 2) throw Error(ErrorCode::PreconditionFailed, "cyclic order must be at least 2");
  const AbelianGroup group = AbelianGroup::from_moduli({n});
  CyclicInverseReport report;
  report.n = n;
  detail::EnumerationSpec spec;
  spec.length = n - 1;
  spec.prune_saturated = true;
  spec.collect = detail::Collect::NonBasis;
  report.non_basis = detail::enumerate_regular(group, spec, limits).collected;
  for (const Sequence& s : report.non_basis) {
    const auto support = s.support();
    const bool power_of_generator = support.size() == 1 && group.order_of(support[0]) == n;
    if (!power_of_generator) report.unexpected.push_back(s);
  }
  report.holds = report.unexpected.empty();
  return report;
}

namespace {

void require_extremal_q(int q) {
  if (q < 5 || !is_prime(q)) {
    throw Error(ErrorCode::PreconditionFailed, "q must be a prime >= 5, got " + std::to_string(q));
  }
}

}  // namespace

Sequence extremal_sequence(int q) {
  require_extremal_q(q);
  const AbelianGroup group = AbelianGroup::from_moduli({3, 3 * q});
  Sequence s(group);
  s.add(group.index_of(GroupElement{{0, 1}}), 3 * q - 2);
  s.add(group.index_of(GroupElement{{1, 3 * q - 1}}), 4);
  return s;
}

ExtremalReport verify_extremal(int q) {
  Sequence s = extremal_sequence(q);
  const AbelianGroup& group = s.group();
  const ElementId target = group.index_of(GroupElement{{2, 3 * q - 3}});
  ElementSet missing = missing_elements(s);
  const bool regular = is_regular(s).regular;
  const bool target_missing = missing.contains(target);
  const int bound = regular && !missing.empty() ? s.length() + 1 : 0;
  return ExtremalReport{q, std::move(s), regular, target, target_missing, std::move(missing), bound};
}

MonteCarloReport monte_carlo_theorem(int q, std::uint64_t trials, std::uint64_t seed, const MonteCarloOptions& options) {
  require_extremal_q(q);
  const AbelianGroup group = AbelianGroup::from_moduli({3, 3 * q});
  const SubgroupLattice lattice(group);
  MonteCarloReport report;
  report.q = q;
  report.length = options.length > 0 ? options.length : 3 * q + 3;
  report.seed = seed;

  std::atomic<std::uint64_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    try {
      for (std::uint64_t i = next.fetch_add(1); i < trials; i = next.fetch_add(1)) {
        Sequence s = options.plant_extremal && i == 0 ? extremal_sequence(q)
                                                      : random_regular(lattice, report.length, seed + i);
        ElementSet missing = missing_elements(s);
        if (missing.empty()) continue;
        const std::lock_guard lock(mutex);
        report.counterexamples.push_back({i, std::move(s), std::move(missing)});
      }
    } catch (...) {
      const std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      next.store(trials);
    }
  };
  const int count = std::max(1, options.workers);
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < count; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::sort(report.counterexamples.begin(), report.counterexamples.end(),
            [](const auto& a, const auto& b) { return a.trial < b.trial; });
  report.trials_run = trials;
  return report;
}

}  // namespace zslab

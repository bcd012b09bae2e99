#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "zslab/element_set.hpp"
#include "zslab/group.hpp"
#include "zslab/search.hpp"
#include "zslab/sequence.hpp"
#include "zslab/subgroup.hpp"

namespace zslab {

enum class DavenportMode { Formula, BruteForce };

// Formula: n for cyclic groups, n1 + n2 - 1 in rank 2, FormulaUnavailable
// beyond. BruteForce: one more than the longest zero-sum-free sequence.
int davenport(const AbelianGroup& group, DavenportMode mode, const SearchLimits& limits = {});

// Longest zero-sum-free sequence, with witness. value is d(G) = D(G) - 1.
SearchReport longest_zero_sumfree(const AbelianGroup& group, const SearchLimits& limits = {}, bool symmetry = true);

struct C0Options {
  int cap = 0;  // 0 = 2|G|
  bool symmetry = true;
  SearchLimits limits;
};

SearchReport longest_regular_nonbasis(const AbelianGroup& group, const C0Options& options = {});

// longest_regular_nonbasis + 1. Throws Error(Internal) if the cap was hit,
// since the value is then unknown.
int c0_exact(const AbelianGroup& group, const C0Options& options = {});

// {g : g + A = A}. Throws EmptySet.
Subgroup stabilizer(const ElementSet& set);

struct KneserReport {
  ElementSet sum;
  Subgroup stabilizer;
  long lhs = 0;
  long rhs = 0;
  bool holds = false;
};

// |A_1 + ... + A_r| >= sum |A_i + H| - (r - 1)|H| with H the stabilizer of the
// sum. Throws EmptySet.
KneserReport kneser_check(std::span<const ElementSet> sets);

struct KneserFuzzFailure {
  std::uint64_t index = 0;
  std::vector<ElementSet> sets;
  long lhs = 0;
  long rhs = 0;
};

struct KneserFuzzReport {
  std::uint64_t cases = 0;
  std::vector<KneserFuzzFailure> failures;
};

// Case i uses its own generator seeded with seed + i: a group of order
// <= max_order drawn from groups_up_to, 1..max_sets summands, each a random
// nonempty subset of uniformly drawn size.
KneserFuzzReport kneser_fuzz(std::uint64_t cases, std::uint64_t seed, int max_order = 48, int max_sets = 4);

struct Rank2InverseReport {
  int p = 0;
  int length = 0;
  std::uint64_t checked = 0;
  std::vector<Sequence> violations;  // |sigma_0| < p^2 - 1
  bool holds = false;
};

// Every regular sequence of length 2p - 2 over C_p + C_p has
// |sigma_0(S)| >= p^2 - 1. PreconditionFailed unless p is prime.
Rank2InverseReport rank2_inverse_check(int p, const SearchLimits& limits = {});

struct CyclicInverseReport {
  int n = 0;
  std::vector<Sequence> non_basis;   // regular, length n - 1, sigma(S) != C_n
  std::vector<Sequence> unexpected;  // non_basis entries that are not g^{n-1} with g a generator
  bool holds = false;
};

CyclicInverseReport cyclic_inverse_check(int n, const SearchLimits& limits = {});

// (0,1)^{3q-2} (1,-1)^4 over C_3 + C_3q.
Sequence extremal_sequence(int q);

struct ExtremalReport {
  int q = 0;
  Sequence sequence;
  bool regular = false;
  ElementId target = 0;  // (2, 3q - 3)
  bool target_missing = false;
  ElementSet missing;    // G \ sigma(S)
  int c0_lower_bound = 0;
};

// PreconditionFailed unless q is a prime >= 5.
ExtremalReport verify_extremal(int q);

struct MonteCarloOptions {
  int length = 0;               // 0 = 3q + 3
  bool plant_extremal = false;  // trial 0 tests extremal_sequence(q) instead of a sample
  int workers = 1;
};

struct MonteCarloCounterexample {
  std::uint64_t trial = 0;
  Sequence sequence;
  ElementSet missing;
};

struct MonteCarloReport {
  int q = 0;
  int length = 0;
  std::uint64_t seed = 0;
  std::uint64_t trials_run = 0;
  std::vector<MonteCarloCounterexample> counterexamples;  // ordered by trial
};

// Trial i draws random_regular(C_3 + C_3q, length, seed + i); non-bases are
// counterexamples.
MonteCarloReport monte_carlo_theorem(int q, std::uint64_t trials, std::uint64_t seed,
                                     const MonteCarloOptions& options = {});

}  // namespace zslab

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zslab/group.hpp"
#include "zslab/sequence.hpp"

namespace zslab {

struct SearchLimits {
  double time_budget_seconds = 0;  // 0 = unlimited
  std::uint64_t node_budget = 0;   // 0 = unlimited
  int workers = 1;
  // JSON-lines checkpoint; completed top-level prefixes are skipped on resume.
  std::optional<std::filesystem::path> checkpoint;
  // Stop after this many prefixes complete in this run (0 = run to the end).
  // Used to interrupt a run deterministically.
  std::size_t stop_after_tasks = 0;
  // Exhaustive searches refuse larger groups up front.
  int max_group_order = 36;
};

struct SearchReport {
  AbelianGroup group;
  std::string invariant;
  std::optional<int> value;         // absent when the cap was hit
  std::optional<Sequence> witness;  // lexicographically smallest multiplicity vector
  std::uint64_t nodes = 0;
  double wall_seconds = 0;
  bool budget_exhausted = false;
  bool cap_hit = false;
  std::size_t tasks_total = 0;
  std::size_t tasks_resumed = 0;
};

namespace detail {

enum class MaxSearchKind {
  RegularNonBasis,  // longest regular sequence that is not an additive basis
  ZeroSumFree,      // longest sequence without a nonempty zero-sum subsequence
};

struct MaxSearchSpec {
  MaxSearchKind kind = MaxSearchKind::RegularNonBasis;
  int cap = 0;  // maximum length explored; 0 = 2|G|
  bool symmetry = true;
};

// Depth-first search over canonical (non-decreasing index) multisets of
// nonzero elements, split into top-level prefixes that run on a worker pool.
// Throws BudgetExceeded, CheckpointMismatch, CorruptCheckpoint.
SearchReport run_max_search(const AbelianGroup& group, const MaxSearchSpec& spec, const SearchLimits& limits);

enum class Collect {
  NonBasis,      // keep sequences with sigma(S) != G
  Sigma0Below,   // keep sequences with |sigma_0(S)| < threshold
};

struct EnumerationSpec {
  int length = 0;
  // Skip subtrees whose sigma_0 is already G (every longer sequence is a
  // basis). Only sound with Collect::NonBasis.
  bool prune_saturated = false;
  Collect collect = Collect::NonBasis;
  int threshold = 0;
};

struct EnumerationResult {
  std::uint64_t visited = 0;  // regular sequences of the target length reached
  std::uint64_t nodes = 0;
  std::vector<Sequence> collected;  // sorted by multiplicity vector
};

// Every regular sequence of exactly spec.length nonzero terms.
EnumerationResult enumerate_regular(const AbelianGroup& group, const EnumerationSpec& spec, const SearchLimits& limits);

std::string config_hash(const std::string& canonical);

}  // namespace detail

}  // namespace zslab

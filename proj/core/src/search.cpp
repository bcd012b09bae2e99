#include "zslab/search.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <chrono>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "zslab/error.hpp"
#include "zslab/subgroup.hpp"

namespace zslab::detail {
namespace {

using Clock = std::chrono::steady_clock;
using Multiplicities = std::vector<int>;

constexpr int kMaxSearchOrder = 1024;
constexpr std::uint64_t kCheckInterval = 1024;

// Precomputed tables shared read-only by all workers.
struct Tables {
  int n = 0;
  std::vector<ElementId> add;  // n * n
  std::vector<ElementId> neg;
  bool track_regularity = false;
  std::vector<std::vector<int>> containing;  // proper subgroups holding each element
  std::vector<int> capacity;
  std::vector<std::vector<ElementId>> candidates;  // candidate lists referenced by tasks
};

struct Task {
  std::vector<ElementId> prefix;
  int candidates = 0;  // index into Tables::candidates
  int min_pos = 0;     // first candidate position the extension may use
  bool expand = true;  // false: only the prefix itself is examined
};

struct TaskResult {
  bool done = false;
  int best_len = -1;
  Multiplicities witness;  // empty when no sequence reached best_len
  std::uint64_t nodes = 0;
  bool cap_hit = false;
  std::uint64_t visited = 0;
  std::vector<Multiplicities> collected;
};

enum class Mode { RegularNonBasis, ZeroSumFree, Enumerate };

struct Shared {
  const Tables* tables = nullptr;
  Mode mode = Mode::RegularNonBasis;
  int cap = 0;
  EnumerationSpec enumeration;
  std::atomic<bool> stop{false};
  std::atomic<std::uint64_t> nodes{0};
  std::uint64_t node_budget = 0;
  Clock::time_point deadline = Clock::time_point::max();
};

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  bool test(int i) const noexcept { return (w[i >> 6] >> (i & 63)) & 1U; }
  void set(int i) noexcept { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  int count() const noexcept {
    int c = 0;
    for (const auto x : w) c += std::popcount(x);
    return c;
  }
  bool operator==(const Bits&) const = default;
};

template <std::size_t W>
class Kernel {
 public:
  Kernel(Shared& shared, int floor) : shared_(shared), t_(*shared.tables) {
    mult_.assign(t_.n, 0);
    counts_.assign(t_.capacity.size(), 0);
    for (int i = 0; i < t_.n; ++i) full_.set(i);
    result_.best_len = floor;
  }

  TaskResult run(const Task& task) {
    Bits<W> s0;
    s0.set(0);
    bool zero = false;
    bool valid = true;
    for (const ElementId g : task.prefix) {
      if (!push(g)) valid = false;
      if (shared_.mode == Mode::ZeroSumFree && s0.test(t_.neg[g])) valid = false;
      zero = zero || s0.test(t_.neg[g]);
      s0 = extend(s0, g);
    }
    if (valid) {
      if (task.expand) {
        dfs(s0, zero, t_.candidates[task.candidates], task.min_pos);
      } else {
        visit(s0, zero);
      }
    }
    flush_nodes();
    result_.done = !aborted_;
    return std::move(result_);
  }

 private:
  Bits<W> extend(const Bits<W>& s0, ElementId g) const {
    Bits<W> out = s0;
    const ElementId* row = &t_.add[static_cast<std::size_t>(g) * t_.n];
    for (std::size_t k = 0; k < W; ++k) {
      std::uint64_t word = s0.w[k];
      while (word) {
        const int i = static_cast<int>(k * 64) + std::countr_zero(word);
        word &= word - 1;
        out.set(row[i]);
      }
    }
    return out;
  }

  bool push(ElementId g) {
    ++mult_[g];
    ++length_;
    bool ok = true;
    if (t_.track_regularity) {
      for (const int h : t_.containing[g]) {
        if (++counts_[h] > t_.capacity[h]) ok = false;
      }
    }
    return ok;
  }

  void pop(ElementId g) {
    --mult_[g];
    --length_;
    if (t_.track_regularity) {
      for (const int h : t_.containing[g]) --counts_[h];
    }
  }

  void record() {
    if (length_ > result_.best_len ||
        (length_ == result_.best_len && (result_.witness.empty() || mult_ < result_.witness))) {
      result_.best_len = length_;
      result_.witness = mult_;
    }
  }

  bool tick() {
    ++result_.nodes;
    if (++pending_ >= kCheckInterval) {
      flush_nodes();
      if (shared_.stop.load(std::memory_order_relaxed)) aborted_ = true;
      if (shared_.node_budget && shared_.nodes.load(std::memory_order_relaxed) > shared_.node_budget) aborted_ = true;
      if (Clock::now() > shared_.deadline) aborted_ = true;
      if (aborted_) shared_.stop.store(true);
    }
    return !aborted_;
  }

  void flush_nodes() {
    shared_.nodes.fetch_add(pending_, std::memory_order_relaxed);
    pending_ = 0;
  }

  // Examines the current sequence; returns whether its extensions need exploring.
  bool visit(const Bits<W>& s0, bool zero) {
    const bool full = s0 == full_;
    switch (shared_.mode) {
      case Mode::RegularNonBasis:
        if (!(full && zero)) record();
        if (full) return false;
        if (length_ >= shared_.cap) {
          result_.cap_hit = true;
          return false;
        }
        return true;
      case Mode::ZeroSumFree:
        record();
        // each further term adds at least one new element to sigma_0
        return length_ + t_.n - s0.count() >= result_.best_len;
      case Mode::Enumerate: {
        const EnumerationSpec& spec = shared_.enumeration;
        if (length_ == spec.length) {
          ++result_.visited;
          const bool keep = spec.collect == Collect::NonBasis ? !(full && zero) : s0.count() < spec.threshold;
          if (keep) result_.collected.push_back(mult_);
          return false;
        }
        return !(spec.prune_saturated && full);
      }
    }
    return false;
  }

  void dfs(const Bits<W>& s0, bool zero, const std::vector<ElementId>& cands, int min_pos) {
    if (!tick()) return;
    if (!visit(s0, zero)) return;
    for (std::size_t i = min_pos; i < cands.size() && !aborted_; ++i) {
      const ElementId g = cands[i];
      const bool closes = s0.test(t_.neg[g]);
      if (shared_.mode == Mode::ZeroSumFree && closes) continue;
      if (push(g)) dfs(extend(s0, g), zero || closes, cands, static_cast<int>(i));
      pop(g);
    }
  }

  Shared& shared_;
  const Tables& t_;
  Bits<W> full_;
  Multiplicities mult_;
  std::vector<int> counts_;
  int length_ = 0;
  std::uint64_t pending_ = 0;
  bool aborted_ = false;
  TaskResult result_;
};

TaskResult run_task(Shared& shared, const Task& task, int floor) {
  const int n = shared.tables->n;
  if (n <= 64) return Kernel<1>(shared, floor).run(task);
  if (n <= 128) return Kernel<2>(shared, floor).run(task);
  if (n <= 256) return Kernel<4>(shared, floor).run(task);
  if (n <= 512) return Kernel<8>(shared, floor).run(task);
  return Kernel<16>(shared, floor).run(task);
}

Tables make_tables(const AbelianGroup& group, bool regularity) {
  Tables t;
  t.n = group.order();
  t.add.resize(static_cast<std::size_t>(t.n) * t.n);
  t.neg.resize(t.n);
  for (ElementId a = 0; a < t.n; ++a) {
    t.neg[a] = group.neg(a);
    for (ElementId b = 0; b < t.n; ++b) t.add[static_cast<std::size_t>(a) * t.n + b] = group.add(a, b);
  }
  t.track_regularity = regularity;
  if (regularity) {
    const SubgroupLattice lattice(group);
    t.containing.resize(t.n);
    for (ElementId g = 0; g < t.n; ++g) {
      const auto c = lattice.proper_containing(g);
      t.containing[g].assign(c.begin(), c.end());
    }
    for (std::size_t s = 0; s < lattice.subgroups().size(); ++s) t.capacity.push_back(lattice.capacity(static_cast<int>(s)));
  }
  std::vector<ElementId> nonzero;
  for (ElementId g = 1; g < t.n; ++g) nonzero.push_back(g);
  t.candidates.push_back(std::move(nonzero));
  return t;
}

// C_p + C_p with p prime.
bool is_elementary_rank2(const AbelianGroup& group) {
  const auto f = group.invariant_factors();
  return f.size() == 2 && f[0] == f[1] && is_prime(f[0]);
}

// Top-level prefixes. The first task is the most productive one, since it
// fixes the pruning floor for zero-sum-free searches.
std::vector<Task> make_tasks(const AbelianGroup& group, Tables& t, bool symmetry) {
  std::vector<Task> tasks;
  const auto& all = t.candidates[0];
  if (symmetry && is_elementary_rank2(group)) {
    // Up to automorphism a sequence either contains e1 = (1,0) and e2 = (0,1),
    // or lies in <e1> and contains e1.
    const int p = group.invariant_factors()[0];
    const ElementId e1 = 1;
    const ElementId e2 = p;
    for (std::size_t i = 0; i < all.size(); ++i) tasks.push_back({{e1, e2, all[i]}, 0, static_cast<int>(i), true});
    std::vector<ElementId> line;
    for (ElementId k = 1; k < p; ++k) line.push_back(k);
    t.candidates.push_back(std::move(line));
    tasks.push_back({{e1}, 1, 0, true});
    tasks.push_back({{e1, e2}, 0, 0, false});
  } else {
    for (std::size_t i = 0; i < all.size(); ++i) tasks.push_back({{all[i]}, 0, static_cast<int>(i), true});
  }
  tasks.push_back({{}, 0, 0, false});
  return tasks;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

nlohmann::ordered_json witness_json(const Multiplicities& m) {
  if (m.empty()) return nullptr;
  auto out = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i]) out.push_back({static_cast<int>(i), m[i]});
  }
  return out;
}

class Checkpoint {
 public:
  Checkpoint(std::filesystem::path path, std::string hash, std::string config, std::size_t task_count)
      : path_(std::move(path)), hash_(std::move(hash)), config_(std::move(config)), task_count_(task_count) {}

  // Fills completed tasks from an existing file; writes the header if needed.
  std::size_t load(const std::vector<Task>& tasks, std::vector<TaskResult>& results, int n) {
    std::size_t resumed = 0;
    std::ifstream in(path_);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (in && std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      nlohmann::json rec;
      try {
        rec = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw corrupt(line_no, e.what());
      }
      if (!have_header) {
        if (!rec.is_object() || rec.value("type", "") != "header" || !rec.contains("hash")) {
          throw corrupt(line_no, "missing header");
        }
        if (rec["hash"] != hash_) {
          throw Error(ErrorCode::CheckpointMismatch, path_.string() + " was written for a different configuration (" +
                                                         rec.value("config", std::string("?")) + ")");
        }
        have_header = true;
        continue;
      }
      try {
        const auto index = rec.at("task").get<std::size_t>();
        if (index >= tasks.size()) throw corrupt(line_no, "task index out of range");
        if (rec.at("prefix").get<std::vector<ElementId>>() != tasks[index].prefix) {
          throw corrupt(line_no, "prefix does not match task");
        }
        TaskResult r;
        r.done = true;
        r.best_len = rec.at("best_len").get<int>();
        r.nodes = rec.at("nodes").get<std::uint64_t>();
        r.cap_hit = rec.at("cap_hit").get<bool>();
        if (!rec.at("witness").is_null()) {
          r.witness.assign(n, 0);
          for (const auto& pair : rec["witness"]) {
            const auto id = pair.at(0).get<int>();
            if (id < 0 || id >= n) throw corrupt(line_no, "witness element out of range");
            r.witness[id] = pair.at(1).get<int>();
          }
        }
        if (!results[index].done) ++resumed;
        results[index] = std::move(r);
      } catch (const nlohmann::json::exception& e) {
        throw corrupt(line_no, e.what());
      }
    }
    if (!have_header) {
      std::ofstream out(path_, std::ios::trunc);
      nlohmann::ordered_json header;
      header["type"] = "header";
      header["hash"] = hash_;
      header["config"] = config_;
      header["tasks"] = task_count_;
      out << header.dump() << '\n';
      if (!out) throw Error(ErrorCode::InvalidInput, "cannot write checkpoint " + path_.string());
    }
    return resumed;
  }

  void append(std::size_t index, const Task& task, const TaskResult& r) {
    nlohmann::ordered_json rec;
    rec["task"] = index;
    rec["prefix"] = task.prefix;
    rec["best_len"] = r.best_len;
    rec["nodes"] = r.nodes;
    rec["cap_hit"] = r.cap_hit;
    rec["witness"] = witness_json(r.witness);
    const std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app);
    out << rec.dump() << '\n';
  }

 private:
  Error corrupt(std::size_t line_no, const std::string& why) const {
    return Error(ErrorCode::CorruptCheckpoint, path_.string() + " line " + std::to_string(line_no) + ": " + why);
  }

  std::filesystem::path path_;
  std::string hash_;
  std::string config_;
  std::size_t task_count_;
  std::mutex mutex_;
};

void check_searchable(const AbelianGroup& group, const SearchLimits& limits) {
  if (group.order() > limits.max_group_order || group.order() > kMaxSearchOrder) {
    throw BudgetExceeded("exhaustive search over " + group.literal() + " (order " + std::to_string(group.order()) +
                             ") refused: limit is order " +
                             std::to_string(std::min(limits.max_group_order, kMaxSearchOrder)),
                         SearchProgress{});
  }
}

// Runs every task not yet done, honoring budgets. Returns the number of tasks
// completed during this call.
void run_pool(Shared& shared, const std::vector<Task>& tasks, std::vector<TaskResult>& results, int floor,
              const SearchLimits& limits, Checkpoint* checkpoint, std::size_t& completed_this_run) {
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!results[i].done) pending.push_back(i);
  }
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr failure;

  auto worker = [&] {
    try {
      while (!shared.stop.load()) {
        const std::size_t k = next.fetch_add(1);
        if (k >= pending.size()) return;
        const std::size_t index = pending[k];
        TaskResult r = run_task(shared, tasks[index], floor);
        if (!r.done) return;
        const std::lock_guard lock(mutex);
        if (checkpoint) checkpoint->append(index, tasks[index], r);
        results[index] = std::move(r);
        ++completed_this_run;
        if (limits.stop_after_tasks && completed_this_run >= limits.stop_after_tasks) shared.stop.store(true);
      }
    } catch (...) {
      const std::lock_guard lock(mutex);
      if (!failure) failure = std::current_exception();
      shared.stop.store(true);
    }
  };

  const int count = std::max(1, std::min<int>(limits.workers, static_cast<int>(pending.size())));
  if (count == 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int i = 0; i < count; ++i) threads.emplace_back(worker);
    for (auto& th : threads) th.join();
  }
  if (failure) std::rethrow_exception(failure);
}

void init_shared(Shared& s, const Tables& tables, Mode mode, const SearchLimits& limits) {
  s.tables = &tables;
  s.mode = mode;
  s.node_budget = limits.node_budget;
  if (limits.time_budget_seconds > 0) {
    s.deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                    std::chrono::duration<double>(limits.time_budget_seconds));
  }
}

SearchProgress progress_of(const std::vector<TaskResult>& results, std::uint64_t nodes) {
  SearchProgress p;
  p.tasks_total = results.size();
  p.nodes = nodes;
  for (const auto& r : results) {
    if (!r.done) continue;
    ++p.tasks_completed;
    p.best_length = std::max(p.best_length, r.best_len);
  }
  return p;
}

std::string kind_name(MaxSearchKind kind) {
  return kind == MaxSearchKind::RegularNonBasis ? "longest_regular_nonbasis" : "longest_zero_sumfree";
}

}  // namespace

std::string config_hash(const std::string& canonical) {
  std::ostringstream out;
  out << std::hex << fnv1a(canonical);
  return out.str();
}

SearchReport run_max_search(const AbelianGroup& group, const MaxSearchSpec& spec, const SearchLimits& limits) {
  const auto start = Clock::now();
  check_searchable(group, limits);
  const bool regular = spec.kind == MaxSearchKind::RegularNonBasis;
  Tables tables = make_tables(group, regular);
  const std::vector<Task> tasks = make_tasks(group, tables, spec.symmetry);

  const int cap = spec.cap > 0 ? spec.cap : 2 * group.order();
  Shared shared;
  init_shared(shared, tables, regular ? Mode::RegularNonBasis : Mode::ZeroSumFree, limits);
  shared.cap = cap;

  std::vector<TaskResult> results(tasks.size());
  std::size_t resumed = 0;
  std::optional<Checkpoint> checkpoint;
  if (limits.checkpoint) {
    std::ostringstream config;
    config << kind_name(spec.kind) << ";group=" << group.literal() << ";cap=" << cap
           << ";symmetry=" << spec.symmetry << ";tasks=" << tasks.size();
    checkpoint.emplace(*limits.checkpoint, config_hash(config.str()), config.str(), tasks.size());
    resumed = checkpoint->load(tasks, results, group.order());
  }

  std::size_t completed = 0;
  Checkpoint* cp = checkpoint ? &*checkpoint : nullptr;
  // The first task runs alone and its best length becomes the pruning floor
  // for the rest, so the set of visited nodes does not depend on scheduling.
  int floor = -1;
  if (!regular) {
    if (!results[0].done) {
      std::vector<TaskResult> first(results.begin(), results.begin() + 1);
      SearchLimits solo = limits;
      solo.workers = 1;
      run_pool(shared, {tasks[0]}, first, -1, solo, cp, completed);
      results[0] = std::move(first[0]);
    }
    if (results[0].done) floor = results[0].best_len;
  }
  if (!shared.stop.load()) run_pool(shared, tasks, results, floor, limits, cp, completed);

  const std::uint64_t nodes_total = [&] {
    std::uint64_t s = 0;
    for (const auto& r : results) s += r.nodes;
    return s;
  }();
  if (!std::all_of(results.begin(), results.end(), [](const TaskResult& r) { return r.done; })) {
    const SearchProgress progress = progress_of(results, shared.nodes.load());
    throw BudgetExceeded(kind_name(spec.kind) + " over " + group.literal() + " stopped after " +
                             std::to_string(progress.tasks_completed) + "/" + std::to_string(progress.tasks_total) +
                             " prefixes",
                         progress);
  }

  SearchReport report{group, kind_name(spec.kind), std::nullopt, std::nullopt};
  int best = -1;
  const Multiplicities* witness = nullptr;
  for (const auto& r : results) {
    report.cap_hit = report.cap_hit || r.cap_hit;
    if (r.witness.empty()) continue;
    if (r.best_len > best || (r.best_len == best && r.witness < *witness)) {
      best = r.best_len;
      witness = &r.witness;
    }
  }
  if (witness) {
    Sequence s(group);
    for (std::size_t i = 0; i < witness->size(); ++i) {
      if ((*witness)[i]) s.add(static_cast<ElementId>(i), (*witness)[i]);
    }
    report.witness = std::move(s);
  }
  if (!report.cap_hit) report.value = best;
  report.nodes = nodes_total;
  report.tasks_total = tasks.size();
  report.tasks_resumed = resumed;
  report.wall_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

EnumerationResult enumerate_regular(const AbelianGroup& group, const EnumerationSpec& spec, const SearchLimits& limits) {
  check_searchable(group, limits);
  if (spec.length < 1) throw Error(ErrorCode::InvalidInput, "enumeration length must be positive");
  if (spec.prune_saturated && spec.collect != Collect::NonBasis) {
    throw Error(ErrorCode::InvalidInput, "saturation pruning only applies to non-basis collection");
  }
  Tables tables = make_tables(group, true);
  const std::vector<Task> tasks = make_tasks(group, tables, false);
  Shared shared;
  init_shared(shared, tables, Mode::Enumerate, limits);
  shared.enumeration = spec;

  std::vector<TaskResult> results(tasks.size());
  std::size_t completed = 0;
  run_pool(shared, tasks, results, -1, limits, nullptr, completed);
  if (!std::all_of(results.begin(), results.end(), [](const TaskResult& r) { return r.done; })) {
    throw BudgetExceeded("enumeration over " + group.literal() + " stopped early",
                         progress_of(results, shared.nodes.load()));
  }

  EnumerationResult out;
  std::vector<Multiplicities> collected;
  for (auto& r : results) {
    out.visited += r.visited;
    out.nodes += r.nodes;
    collected.insert(collected.end(), r.collected.begin(), r.collected.end());
  }
  std::sort(collected.begin(), collected.end());
  for (const auto& m : collected) {
    Sequence s(group);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i]) s.add(static_cast<ElementId>(i), m[i]);
    }
    out.collected.push_back(std::move(s));
  }
  return out;
}

}  // namespace zslab::detail

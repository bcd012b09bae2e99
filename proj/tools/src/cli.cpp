#include "zslab_cli/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>

#include "zslab/algebra.hpp"
#include "zslab/error.hpp"
#include "zslab/invariants.hpp"
#include "zslab/io.hpp"
#include "zslab/lemmas.hpp"

namespace zslab::cli {
namespace {

using io::Json;

struct Options {
  std::string group;
  std::string seq;
  std::string set;
  std::uint64_t seed = 0;
  int workers = 0;
  double budget_seconds = 0;
  std::uint64_t node_budget = 0;
  std::string checkpoint;
  std::string json;
  std::size_t stop_after_tasks = 0;
  int max_group_order = 36;
  int cap = 0;
  bool no_symmetry = false;
  std::string mode = "formula";
  int length = 0;
  int q = 5;
  std::uint64_t trials = 10000;
  bool plant_extremal = false;
  std::uint64_t cases = 10000;
  int max_order = 48;
  int max_sets = 4;
};

struct Outcome {
  Json config = Json::object();
  Json claim = nullptr;
  Json result = Json::object();
  std::string status = "ok";
  int exit_code = kOk;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int resolve_workers(int requested) {
  if (requested > 0) return requested;
  if (requested < 0) throw UsageError("--workers must be >= 1");
  if (const char* env = std::getenv("ZSLAB_WORKERS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ZSLAB_WORKERS must be a positive integer, got '") + env + "'");
  }
  return 1;
}

AbelianGroup require_group(const Options& o) {
  if (o.group.empty()) throw UsageError("--group is required");
  return parse_group_literal(o.group);
}

Sequence load_sequence(const AbelianGroup& group, const Options& o) {
  if (o.seq.empty()) throw UsageError("--seq is required");
  return io::sequence_from_json(group, io::read_json_file(o.seq));
}

Sequence load_nonempty_sequence(const AbelianGroup& group, const Options& o) {
  Sequence s = load_sequence(group, o);
  if (s.empty()) throw UsageError("sequence in " + o.seq + " is empty");
  return s;
}

SearchLimits limits_of(const Options& o) {
  SearchLimits l;
  l.time_budget_seconds = o.budget_seconds;
  l.node_budget = o.node_budget;
  l.workers = resolve_workers(o.workers);
  if (!o.checkpoint.empty()) l.checkpoint = o.checkpoint;
  l.stop_after_tasks = o.stop_after_tasks;
  l.max_group_order = o.max_group_order;
  return l;
}

Json common_config(const Options& o) {
  Json c;
  if (!o.group.empty()) c["group"] = o.group;
  if (!o.seq.empty()) c["seq"] = o.seq;
  c["seed"] = o.seed;
  c["workers"] = resolve_workers(o.workers);
  c["budget_seconds"] = o.budget_seconds;
  c["checkpoint"] = o.checkpoint.empty() ? Json(nullptr) : Json(o.checkpoint);
  return c;
}

Json search_config(const Options& o) {
  Json c = common_config(o);
  c["node_budget"] = o.node_budget;
  c["max_group_order"] = o.max_group_order;
  c["symmetry"] = !o.no_symmetry;
  return c;
}

bool is_elementary_rank2(const AbelianGroup& g) {
  const auto f = g.invariant_factors();
  return f.size() == 2 && f[0] == f[1] && is_prime(f[0]);
}

Json c0_claim(const AbelianGroup& g) {
  if (!is_elementary_rank2(g)) return nullptr;
  return "c0(C_p+C_p) = 2p-1, p = " + std::to_string(g.invariant_factors()[0]);
}

// ---------------------------------------------------------------------------

void run_group_info(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  out.config = common_config(o);
  const auto subgroups = all_subgroups(g);
  std::map<int, int> by_order;
  for (const Subgroup& h : subgroups) ++by_order[h.order()];
  out.result["group"] = io::group_json(g);
  out.result["subgroup_count"] = subgroups.size();
  Json orders = Json::object();
  for (const auto& [order, count] : by_order) orders[std::to_string(order)] = count;
  out.result["subgroups_by_order"] = std::move(orders);
}

void run_sigma(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  const Sequence s = load_nonempty_sequence(g, o);
  out.config = common_config(o);
  const ElementSet sums = sigma_set(s);
  out.result["sequence"] = io::sequence_json(s);
  out.result["sigma_size"] = sums.count();
  out.result["basis"] = sums.is_full();
  out.result["sigma"] = io::set_json(sums);
  out.result["missing"] = io::set_json(sums.complement());
}

void run_regular(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  const Sequence s = load_sequence(g, o);
  out.config = common_config(o);
  const RegularityResult r = is_regular(s);
  out.result["sequence"] = io::sequence_json(s);
  out.result["regular"] = r.regular;
  if (r.violation) {
    Json v;
    v["subgroup"] = io::subgroup_json(*r.violation);
    v["terms"] = r.terms_in_violation;
    v["capacity"] = r.violation->order() - 1;
    out.result["violation"] = std::move(v);
  } else {
    out.result["violation"] = nullptr;
  }
}

void run_basis(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  const Sequence s = load_nonempty_sequence(g, o);
  out.config = common_config(o);
  const ElementSet missing = missing_elements(s);
  out.result["basis"] = missing.empty();
  out.result["missing_count"] = missing.count();
  out.result["missing"] = io::set_json(missing);
}

void run_davenport(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  out.config = search_config(o);
  out.config["mode"] = o.mode;
  if (g.rank() <= 2) out.claim = "D(C_n1+C_n2) = n1+n2-1";
  out.result["mode"] = o.mode;
  if (o.mode == "formula") {
    out.result["davenport"] = davenport(g, DavenportMode::Formula);
    return;
  }
  const SearchReport r = longest_zero_sumfree(g, limits_of(o), !o.no_symmetry);
  out.result["davenport"] = *r.value + 1;
  out.result["search"] = io::search_report_json(r);
}

void run_c0_like(const Options& o, bool as_c0, Outcome& out) {
  const AbelianGroup g = require_group(o);
  out.config = search_config(o);
  out.config["cap"] = o.cap;
  out.claim = c0_claim(g);
  C0Options options;
  options.cap = o.cap;
  options.symmetry = !o.no_symmetry;
  options.limits = limits_of(o);
  const SearchReport r = longest_regular_nonbasis(g, options);
  const char* key = as_c0 ? "c0" : "longest_regular_nonbasis";
  if (r.value) {
    out.result[key] = as_c0 ? *r.value + 1 : *r.value;
  } else {
    out.result[key] = "Unknown";
    out.status = "cap_hit";
    out.exit_code = kBudget;
  }
  out.result["search"] = io::search_report_json(r);
}

Json assignment_json(const AbelianGroup& g, const VanishingAssignment& a) {
  Json list = Json::array();
  for (std::size_t i = 0; i < a.terms.size(); ++i) {
    Json slot;
    slot["pos"] = i;
    slot["element"] = io::element_json(g, a.terms[i]);
    if (a.kill[i]) {
      slot["kill_exponent"] = *a.kill[i];
    } else {
      slot["free"] = true;
    }
    list.push_back(std::move(slot));
  }
  return list;
}

void run_algebra_cover(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  const Sequence s = load_nonempty_sequence(g, o);
  out.config = common_config(o);
  const GroupAlgebra algebra(g);
  CoverSearchStats stats;
  const auto assignment = exists_vanishing_assignment(s, algebra, &stats);
  out.result["found"] = assignment.has_value();
  out.result["assignment"] = assignment ? assignment_json(g, *assignment) : Json(nullptr);
  out.result["field"] = {{"prime", algebra.field().prime}, {"root", algebra.field().root}};
  out.result["nodes"] = stats.nodes;
}

void run_algebra_dwitness(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  if (o.length < 1) throw UsageError("--len must be >= 1");
  out.config = search_config(o);
  out.config["len"] = o.length;
  const auto f = g.invariant_factors();
  if (f.size() == 2 && (f[0] == 2 || f[0] == 3)) out.claim = "d(G,F) = d(G) for C_2+C_2n and C_3+C_3n";
  WitnessSearchOptions options;
  options.node_budget = o.node_budget;
  options.time_budget_seconds = o.budget_seconds;
  options.symmetry = !o.no_symmetry;
  const auto witness = nonvanishing_witness_search(g, o.length, options);
  out.result["length"] = o.length;
  out.result["found"] = witness.has_value();
  out.result["witness"] = witness ? io::sequence_json(*witness) : Json(nullptr);
}

void run_stabilizer(const Options& o, Outcome& out) {
  const AbelianGroup g = require_group(o);
  if (o.set.empty()) throw UsageError("--set is required");
  const nlohmann::json doc = io::read_json_file(o.set);
  const nlohmann::json& list = doc.is_object() && doc.contains("elements") ? doc["elements"] : doc;
  if (!list.is_array()) throw UsageError("--set file must hold an array of elements");
  ElementSet a(g);
  for (const auto& e : list) a.insert(io::element_from_json(g, e));
  out.config = common_config(o);
  out.config["set"] = o.set;
  const Subgroup h = stabilizer(a);
  out.result["set_size"] = a.count();
  out.result["stabilizer"] = io::subgroup_json(h);
  out.result["members"] = io::set_json(h.members());
}

void run_kneser_fuzz(const Options& o, Outcome& out) {
  out.config = common_config(o);
  out.config["cases"] = o.cases;
  out.config["max_order"] = o.max_order;
  out.config["max_sets"] = o.max_sets;
  out.claim = "Kneser inequality |A_1+...+A_r| >= sum |A_i+H| - (r-1)|H|";
  const KneserFuzzReport r = kneser_fuzz(o.cases, o.seed, o.max_order, o.max_sets);
  Json failures = Json::array();
  for (const auto& f : r.failures) {
    Json sets = Json::array();
    for (const ElementSet& s : f.sets) sets.push_back(io::set_json(s));
    failures.push_back({{"case", f.index}, {"group", f.sets.front().group().literal()}, {"sets", sets},
                        {"lhs", f.lhs}, {"rhs", f.rhs}});
  }
  out.result["cases"] = r.cases;
  out.result["failures"] = r.failures.size();
  out.result["holds_all"] = r.failures.empty();
  out.result["failure_list"] = std::move(failures);
  if (!r.failures.empty()) {
    out.status = "counterexample";
    out.exit_code = kMathFailure;
  }
}

void run_verify_extremal(const Options& o, Outcome& out) {
  out.config = common_config(o);
  out.config["q"] = o.q;
  out.claim = "c0(C_3+C_3q) >= 3q+3 via (0,1)^(3q-2) (1,-1)^4";
  const ExtremalReport r = verify_extremal(o.q);
  const AbelianGroup& g = r.sequence.group();
  const St0Result st0 = lemma_st0_check(r.sequence);
  out.result["q"] = r.q;
  out.result["group"] = g.literal();
  out.result["sequence"] = io::sequence_json(r.sequence);
  out.result["lower_bound_length"] = r.sequence.length();
  out.result["regular"] = r.regular;
  out.result["target"] = io::element_json(g, r.target);
  out.result["target_missing"] = r.target_missing;
  out.result["missing_count"] = r.missing.count();
  out.result["missing"] = io::set_json(r.missing);
  out.result["c0_lower_bound"] = r.c0_lower_bound;
  Json st;
  st["status"] = st0.status == St0Status::Holds      ? "holds"
                 : st0.status == St0Status::Violated ? "violated"
                                                     : "not_applicable";
  st["threshold"] = st0.threshold;
  st["stabilizer_order"] = st0.stabilizer ? Json(st0.stabilizer->order()) : Json(nullptr);
  out.result["sigma_stabilizer"] = std::move(st);
  if (!(r.regular && r.target_missing) || st0.status == St0Status::Violated) {
    out.status = "counterexample";
    out.exit_code = kMathFailure;
  }
}

void run_monte_carlo(const Options& o, Outcome& out) {
  out.config = common_config(o);
  out.config["q"] = o.q;
  out.config["trials"] = o.trials;
  out.config["length"] = o.length;
  out.config["plant_extremal"] = o.plant_extremal;
  out.claim = "every regular sequence of length 3q+3 over C_3+C_3q is an additive basis";
  MonteCarloOptions options;
  options.length = o.length;
  options.plant_extremal = o.plant_extremal;
  options.workers = resolve_workers(o.workers);
  const MonteCarloReport r = monte_carlo_theorem(o.q, o.trials, o.seed, options);
  Json list = Json::array();
  for (const auto& c : r.counterexamples) {
    list.push_back({{"trial", c.trial}, {"sequence", io::sequence_json(c.sequence)}, {"missing", io::set_json(c.missing)}});
  }
  out.result["q"] = r.q;
  out.result["length"] = r.length;
  out.result["seed"] = r.seed;
  out.result["trials_run"] = r.trials_run;
  out.result["counterexamples"] = r.counterexamples.size();
  out.result["counterexample_list"] = std::move(list);
  if (!r.counterexamples.empty()) {
    out.status = "counterexample";
    out.exit_code = kMathFailure;
  }
}

// ---------------------------------------------------------------------------

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::EnumerationBudgetExceeded:
    case ErrorCode::RetryBudgetExceeded:
    case ErrorCode::SearchBudgetExceeded:
      return kBudget;
    default:
      return kUsage;
  }
}

Json error_json(ErrorCode code, const std::string& message) {
  return {{"code", std::string(to_string(code))}, {"message", message}};
}

void add_common(CLI::App* app, Options& o, bool needs_group) {
  auto* g = app->add_option("--group", o.group, "Invariant factors or moduli, e.g. 3,15");
  if (needs_group) g->required();
  app->add_option("--seed", o.seed, "Random seed (default 0)");
  app->add_option("--workers", o.workers, "Worker threads (default: $ZSLAB_WORKERS or 1)");
  app->add_option("--budget-seconds", o.budget_seconds, "Wall-clock budget, 0 = unlimited");
  app->add_option("--checkpoint", o.checkpoint, "JSON-lines checkpoint for resumable searches");
  app->add_option("--json", o.json, "Write the report to this path instead of stdout");
}

void add_search(CLI::App* app, Options& o) {
  app->add_option("--node-budget", o.node_budget, "Node budget, 0 = unlimited");
  app->add_option("--stop-after-tasks", o.stop_after_tasks, "Interrupt after this many prefixes complete");
  app->add_option("--max-group-order", o.max_group_order, "Refuse exhaustive search above this order");
  app->add_flag("--no-symmetry", o.no_symmetry, "Disable the C_p+C_p automorphism reduction");
}

}  // namespace

int parse_and_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"zslab: zero-sum and additive-basis computations on finite abelian groups", "zslab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ZSLAB_VERSION);

  std::map<CLI::App*, std::pair<std::string, std::function<void(const Options&, Outcome&)>>> commands;
  auto command = [&](CLI::App* parent, const std::string& name, const std::string& canonical,
                     const std::string& help, std::function<void(const Options&, Outcome&)> fn, bool needs_group = true) {
    CLI::App* sub = parent->add_subcommand(name, help);
    add_common(sub, o, needs_group);
    commands[sub] = {canonical, std::move(fn)};
    return sub;
  };

  command(&app, "group-info", "group-info", "Invariant factors and subgroup lattice summary", run_group_info);
  command(&app, "sigma", "sigma", "Subsequence sums of a sequence", run_sigma)
      ->add_option("--seq", o.seq, "Sequence JSON file");
  command(&app, "regular", "regular", "Regularity check with the minimal violated subgroup", run_regular)
      ->add_option("--seq", o.seq, "Sequence JSON file");
  command(&app, "basis", "basis", "Additive basis check", run_basis)->add_option("--seq", o.seq, "Sequence JSON file");

  auto* dav = command(&app, "davenport", "davenport", "Davenport constant", run_davenport);
  dav->add_option("--mode", o.mode, "formula or bruteforce")->check(CLI::IsMember({"formula", "bruteforce"}));
  add_search(dav, o);

  for (const auto& [name, as_c0] : {std::pair{"c0", true}, std::pair{"search-extremal", false}}) {
    auto* sub = command(&app, name, name,
                        as_c0 ? "Exact c0 by exhaustive search" : "Longest regular sequence that is not a basis",
                        [as_c0 = as_c0](const Options& opt, Outcome& out) { run_c0_like(opt, as_c0, out); });
    sub->add_option("--cap", o.cap, "Length cap, 0 = 2|G|");
    add_search(sub, o);
  }

  auto add_cover = [&](CLI::App* parent, const std::string& name) {
    command(parent, name, "algebra-cover", "Units making prod (X^g_i - a_i) vanish", run_algebra_cover)
        ->add_option("--seq", o.seq, "Sequence JSON file");
  };
  auto add_dwitness = [&](CLI::App* parent, const std::string& name) {
    auto* sub = command(parent, name, "algebra-dwitness", "Search a sequence whose product never vanishes",
                        run_algebra_dwitness);
    sub->add_option("--len", o.length, "Sequence length")->required();
    sub->add_option("--node-budget", o.node_budget, "Node budget, 0 = unlimited");
    sub->add_flag("--no-symmetry", o.no_symmetry, "Disable the C_p+C_p automorphism reduction");
  };
  add_cover(&app, "algebra-cover");
  add_dwitness(&app, "algebra-dwitness");
  CLI::App* algebra = app.add_subcommand("algebra", "Group algebra commands");
  algebra->require_subcommand(1);
  add_cover(algebra, "cover");
  add_dwitness(algebra, "dwitness");

  command(&app, "stabilizer", "stabilizer", "Stabilizer of a set", run_stabilizer)
      ->add_option("--set", o.set, "JSON array of elements");

  auto* kf = command(&app, "kneser-fuzz", "kneser-fuzz", "Random Kneser inequality checks", run_kneser_fuzz, false);
  kf->add_option("--cases", o.cases, "Number of cases");
  kf->add_option("--max-order", o.max_order, "Largest group order drawn");
  kf->add_option("--max-sets", o.max_sets, "Largest number of summands");

  auto* vp = command(&app, "verify-paper", "verify-paper", "Check the extremal sequence over C_3+C_3q",
                     run_verify_extremal, false);
  vp->add_option("--q", o.q, "Prime q >= 5");

  auto* mc = command(&app, "monte-carlo", "monte-carlo", "Random regular sequences of length 3q+3 over C_3+C_3q",
                     run_monte_carlo, false);
  mc->add_option("--q", o.q, "Prime q >= 5");
  mc->add_option("--trials", o.trials, "Number of trials");
  mc->add_option("--length", o.length, "Sequence length, 0 = 3q+3");
  mc->add_flag("--plant-extremal", o.plant_extremal, "Trial 0 tests the extremal sequence");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << ZSLAB_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n";
    CLI::App* shown = &app;
    for (auto* sub = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front(); sub;
         sub = sub->get_subcommands().empty() ? nullptr : sub->get_subcommands().front()) {
      shown = sub;
    }
    err << shown->help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (!chosen->get_subcommands().empty()) chosen = chosen->get_subcommands().front();
  const auto& [name, fn] = commands.at(chosen);

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    fn(o, outcome);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << e.what() << '\n';
    outcome.result = Json::object();
    outcome.status = "budget_exhausted";
    outcome.exit_code = kBudget;
    outcome.result["error"] = error_json(e.code(), e.what());
    const SearchProgress& p = e.progress();
    outcome.result["progress"] = {{"tasks_completed", p.tasks_completed},
                                  {"tasks_total", p.tasks_total},
                                  {"nodes", p.nodes},
                                  {"best_length", p.best_length}};
    outcome.result["checkpoint"] = o.checkpoint.empty() ? Json(nullptr) : Json(o.checkpoint);
  } catch (const Error& e) {
    err << e.what() << '\n';
    outcome.result = Json::object();
    outcome.status = "error";
    outcome.exit_code = exit_code_for(e.code());
    outcome.result["error"] = error_json(e.code(), e.what());
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Json report;
  report["tool"] = "zslab";
  report["version"] = ZSLAB_VERSION;
  report["command"] = name;
  report["config"] = std::move(outcome.config);
  report["claim"] = std::move(outcome.claim);
  report["status"] = outcome.status;
  report["exit_code"] = outcome.exit_code;
  report["result"] = std::move(outcome.result);
  report["timing"] = {{"wall_seconds", seconds}};

  const std::string text = report.dump(2) + "\n";
  if (o.json.empty()) {
    out << text;
  } else {
    std::ofstream file(o.json);
    file << text;
    if (!file) {
      err << "error: cannot write " << o.json << '\n';
      return kUsage;
    }
  }
  return outcome.exit_code;
}

}  // namespace zslab::cli

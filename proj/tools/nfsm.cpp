// Command-line front end. Exit codes: 0 success, 1 usage error, 2 invalid input,
// 3 node budget exceeded, 4 internal invariant failure.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "nfsm/nfsm.hpp"

namespace {

using namespace nfsm;

enum Exit { kOk = 0, kUsage = 1, kInvalid = 2, kBudget = 3, kInternal = 4 };

SfInstance load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_file(path, text);
  }
}

int cmd_gen(int n, int cap, std::uint64_t seed, bool hard, const std::string& out) {
  emit(serialize_instance(hard ? hard_family(n) : random_instance(n, cap, seed)), out);
  return kOk;
}

int cmd_check(const std::string& path) {
  const SfInstance inst = load_instance(path);
  int total = 0;
  for (AgentId i = 0; i < inst.size(); ++i) total += inst.capacity(i);
  std::cout << "ok n=" << inst.size() << " total_capacity=" << total << "\n";
  return kOk;
}

int cmd_gsp(const std::string& path, std::uint64_t seed, std::uint64_t budget) {
  const SfInstance inst = load_instance(path);
  GspSearchOptions opt;
  opt.seed = seed;
  opt.node_budget = budget;
  const Gsp pi = find_reduced_gsp(inst, opt);
  std::cout << serialize_gsp(pi);
  std::cout << "odd_cycles=" << odd_cycles(pi).size() << "\n";
  return kOk;
}

int cmd_solve(const std::string& path, std::uint64_t budget) {
  const SfInstance inst = load_instance(path);
  GspSearchOptions opt;
  opt.node_budget = budget;
  if (auto m = find_stable_matching(inst, opt)) {
    std::cout << serialize_matching(*m);
  } else {
    std::cout << "UNSOLVABLE\n";
  }
  return kOk;
}

int cmd_nearfeasible(const std::string& path, const std::string& mode_name, std::uint64_t budget) {
  const SfInstance inst = load_instance(path);
  GspSearchOptions opt;
  opt.node_budget = budget;
  const auto res = solve_or_repair(inst, parse_repair_mode(mode_name), opt);
  std::cout << "agent,old,new\n";
  for (AgentId i = 0; i < inst.size(); ++i) {
    if (res.delta[i] != 0) {
      std::cout << i + 1 << "," << inst.capacity(i) << "," << inst.capacity(i) + res.delta[i] << "\n";
    }
  }
  std::cout << serialize_matching(res.matching);
  std::cout << "modified=" << res.modified.size() << " total_abs=" << res.delta.total_abs()
            << " signed=" << res.delta.signed_sum() << "\n";
  return kOk;
}

void print_optimum(const SfInstance& inst, const Matching& m) {
  const auto counts = blocking_pair_counts(m, inst);
  int mx = 0;
  for (int c : counts) mx = std::max(mx, c);
  std::cout << serialize_matching(m);
  std::cout << "blocking_pairs=" << blocking_pairs(m, inst).size() << " max_agent_blocking_pairs=" << mx << "\n";
}

int cmd_optimal(const std::string& path, const std::string& objective, const std::string& method,
                const std::string& variant_name, const std::string& export_path, std::uint64_t budget) {
  const SfInstance inst = load_instance(path);
  const bool midi = objective == "midi";
  const CoverageVariant variant =
      variant_name == "charges-matched" ? CoverageVariant::ChargesMatched : CoverageVariant::Corrected;

  if (method == "bruteforce") {
    if (!export_path.empty()) throw ValidationError("--export needs --method ilp");
    if (midi) {
      const auto r = brute_bp_minima(inst, budget);
      std::cout << "objective=" << r.min_max << "\n";
      print_optimum(inst, r.max_witness);
    } else {
      MinBpOptions opt;
      opt.node_budget = budget;
      const auto r = min_bp_bruteforce(inst, opt);
      std::cout << "objective=" << 2 * r.k << " k=" << r.k << "\n";
      print_optimum(inst, r.matching);
    }
    return kOk;
  }

  const IlpModel model = midi ? build_midi_model(inst, variant) : build_madi_model(inst, variant);
  if (!export_path.empty()) write_file(export_path, export_model(model));
  SolveOptions opt;
  opt.node_budget = budget;
  const auto res = solve_model(model, opt);
  if (res.status != SolveStatus::Optimal) throw InternalError("model reported infeasible");
  std::cout << "objective=" << res.objective << " nodes=" << res.nodes << "\n";
  print_optimum(inst, extract_matching(res.values, model));
  return kOk;
}

int cmd_verify(const std::string& inst_path, const std::string& matching_path, const std::string& csv_path) {
  const SfInstance inst = load_instance(inst_path);
  const Matching m = parse_matching(read_file(matching_path), inst.size());
  const bool feasible = is_feasible(m, inst);
  const auto bps = blocking_pairs(m, inst);
  const auto entries = blocking_entries(m, inst);
  const BeProfile be = be_profile(m, inst);
  std::cout << "feasible=" << (feasible ? "yes" : "no") << "\n";
  std::cout << "blocking_pairs=" << bps.size() << "\n";
  for (auto [a, b] : bps) std::cout << "  " << a + 1 << " " << b + 1 << "\n";
  std::cout << "blocking_entries=" << be.total << " max_agent_blocking_entries=" << be.max << "\n";
  std::cout << "stable=" << (feasible && bps.empty() ? "yes" : "no") << "\n";
  if (!csv_path.empty()) emit(blocking_entries_csv(entries), csv_path);
  return kOk;
}

int cmd_experiment(const std::string& config_path, const std::string& output, int workers) {
  ExperimentConfig cfg = parse_config(read_file(config_path));
  if (!output.empty()) cfg.output_dir = output;
  if (workers >= 0) cfg.workers = static_cast<unsigned>(workers);
  std::optional<CapextResult> capext;
  std::optional<InstabilityResult> instability;
  if (cfg.capext) capext = run_capext_experiment(cfg);
  if (cfg.instability) instability = run_instability_experiment(cfg);
  emit_plot_data(cfg.output_dir, capext ? &*capext : nullptr, instability ? &*instability : nullptr);
  std::cout << summary_text(capext ? &*capext : nullptr, instability ? &*instability : nullptr);
  std::cout << "written to " << cfg.output_dir << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stable fixtures toolkit: partitions, near-feasible repairs, blocking-pair optima"};
  app.require_subcommand(1);

  std::string file, file2, out, mode = "alt", objective = "madi", method = "ilp", variant = "corrected", export_path,
                                csv, config;
  int n = 10, cap = 1, workers = -1;
  std::uint64_t seed = 1, search_seed = 0, budget = 0;
  bool hard = false;

  auto* gen = app.add_subcommand("gen", "Generate a random complete instance");
  gen->add_option("--n", n, "Number of agents")->required()->check(CLI::Range(2, 64));
  gen->add_option("--cap", cap, "Capacity of every agent")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Generator seed");
  gen->add_flag("--hard", hard, "Emit the preference-triangle family instead (n a multiple of 3)");
  gen->add_option("-o,--out", out, "Output file (default stdout)");

  auto* check = app.add_subcommand("check", "Validate an instance file");
  check->add_option("instance", file)->required();

  auto* gsp = app.add_subcommand("gsp", "Print a reduced generalised stable partition");
  gsp->add_option("instance", file)->required();
  gsp->add_option("--seed", search_seed, "Search order seed (0 = natural order)");
  gsp->add_option("--budget", budget, "Node budget (0 = unlimited)");

  auto* solve = app.add_subcommand("solve", "Print a stable matching or UNSOLVABLE");
  solve->add_option("instance", file)->required();
  solve->add_option("--budget", budget, "Node budget (0 = unlimited)");

  auto* nf = app.add_subcommand("nearfeasible", "Change capacities by at most one so a stable matching exists");
  nf->add_option("instance", file)->required();
  nf->add_option("--mode", mode, "plus, minus or alt")->check(CLI::IsMember({"plus", "minus", "alt"}));
  nf->add_option("--budget", budget, "Node budget (0 = unlimited)");

  auto* opt = app.add_subcommand("optimal", "Minimise blocking pairs in total (madi) or per agent (midi)");
  opt->add_option("instance", file)->required();
  opt->add_option("--objective", objective)->check(CLI::IsMember({"madi", "midi"}));
  opt->add_option("--method", method)->check(CLI::IsMember({"bruteforce", "ilp"}));
  opt->add_option("--variant", variant, "Coverage rows: corrected or charges-matched")
      ->check(CLI::IsMember({"charges-matched", "corrected"}));
  opt->add_option("--export", export_path, "Write the model in LP format");
  opt->add_option("--budget", budget, "Node budget (0 = unlimited)");

  auto* verify = app.add_subcommand("verify", "Report blocking pairs and entries of a matching");
  verify->add_option("instance", file)->required();
  verify->add_option("matching", file2)->required();
  verify->add_option("--csv", csv, "Write blocking entries as CSV (- for stdout)");

  auto* exp = app.add_subcommand("experiment", "Run the seeded experiment grid from a config file");
  exp->add_option("--config", config)->required();
  exp->add_option("--output", out, "Override output_dir");
  exp->add_option("--workers", workers, "Override workers");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen(n, cap, seed, hard, out);
    if (*check) return cmd_check(file);
    if (*gsp) return cmd_gsp(file, search_seed, budget);
    if (*solve) return cmd_solve(file, budget);
    if (*nf) return cmd_nearfeasible(file, mode, budget);
    if (*opt) return cmd_optimal(file, objective, method, variant, export_path, budget);
    if (*verify) return cmd_verify(file, file2, csv);
    if (*exp) return cmd_experiment(config, out, workers);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

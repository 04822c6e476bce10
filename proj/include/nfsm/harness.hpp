#pragma once

// Seeded experiments over random complete instances: how many capacity changes
// unsolvable instances need, and how unstable the two ILP optima are.
//
// Each trial derives its instance from trial_seed(base_seed, n, c, index), so a
// single (n, c, index) can be rerun on its own. Trials run on a small thread
// pool; records are stored by index, so aggregation never depends on timing.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "nfsm/errors.hpp"
#include "nfsm/gsp.hpp"
#include "nfsm/ilp.hpp"
#include "nfsm/io.hpp"
#include "nfsm/random.hpp"
#include "nfsm/stability.hpp"

namespace nfsm {

struct ExperimentConfig {
  std::vector<int> n_values{10, 12, 14, 16, 18, 20};
  std::vector<int> cap_values{1, 3};
  int trials = 200;
  std::uint64_t base_seed = 1;
  std::uint64_t gsp_node_budget = 0;  // per partition search; 0 = unlimited
  std::uint64_t ilp_node_budget = 1'000'000;  // per model
  std::string output_dir = "results";
  unsigned workers = 0;  // 0 = one per hardware thread
  bool capext = true;
  bool instability = true;

  void validate() const {
    if (n_values.empty() || cap_values.empty()) throw ValidationError("n_values and cap_values must be non-empty");
    if (trials < 1) throw ValidationError("trials must be at least 1");
    for (int n : n_values) {
      if (n < 2 || n > 64) throw ValidationError("n must be in [2, 64], got " + std::to_string(n));
      for (int c : cap_values) {
        if (c < 1 || c > n - 1) {
          throw ValidationError("capacity " + std::to_string(c) + " is outside [1, " + std::to_string(n - 1) +
                                "] for n = " + std::to_string(n));
        }
      }
    }
  }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<int> parse_int_list(std::string_view v, std::size_t line) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    std::size_t end = v.find(',', pos);
    if (end == std::string_view::npos) end = v.size();
    const auto tok = trim(v.substr(pos, end - pos));
    if (tok.empty()) throw ParseError(line, "empty entry in list");
    out.push_back(static_cast<int>(parse_int(tok, line)));
    pos = end + 1;
  }
  return out;
}

inline std::uint64_t parse_u64(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size()) {
    throw ParseError(line, "expected a non-negative integer, got '" + std::string(tok) + "'");
  }
  return v;
}

inline bool parse_bool(std::string_view tok, std::size_t line) {
  if (tok == "true" || tok == "1" || tok == "yes") return true;
  if (tok == "false" || tok == "0" || tok == "no") return false;
  throw ParseError(line, "expected true or false, got '" + std::string(tok) + "'");
}

}  // namespace detail

/// Flat key=value text; '#' starts a comment line. Unknown keys are errors.
inline ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig cfg;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = detail::trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const auto key = detail::trim(line.substr(0, eq));
    const auto val = detail::trim(line.substr(eq + 1));
    if (key == "n_values") {
      cfg.n_values = detail::parse_int_list(val, line_no);
    } else if (key == "cap_values") {
      cfg.cap_values = detail::parse_int_list(val, line_no);
    } else if (key == "trials") {
      cfg.trials = static_cast<int>(detail::parse_int(val, line_no));
    } else if (key == "base_seed") {
      cfg.base_seed = detail::parse_u64(val, line_no);
    } else if (key == "gsp_node_budget") {
      cfg.gsp_node_budget = detail::parse_u64(val, line_no);
    } else if (key == "ilp_node_budget") {
      cfg.ilp_node_budget = detail::parse_u64(val, line_no);
    } else if (key == "output_dir") {
      cfg.output_dir = std::string(val);
    } else if (key == "workers") {
      cfg.workers = static_cast<unsigned>(detail::parse_u64(val, line_no));
    } else if (key == "capext") {
      cfg.capext = detail::parse_bool(val, line_no);
    } else if (key == "instability") {
      cfg.instability = detail::parse_bool(val, line_no);
    } else if (key == "rng") {
      if (val != SplitMix64::kName) {
        throw ParseError(line_no, "unsupported rng '" + std::string(val) + "', only " + std::string(SplitMix64::kName));
      }
    } else {
      throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    }
    if (end == text.size()) break;
  }
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// Thread pool
// ---------------------------------------------------------------------------

/// Runs task(0..count-1) on up to `workers` threads (0 = hardware threads).
/// The first exception thrown by any task is rethrown after all threads stop.
inline void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        task(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        failed = true;
      }
    }
  };
  if (workers <= 1) {
    run();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
  }
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Records and tables
// ---------------------------------------------------------------------------

struct TrialKey {
  int n = 0;
  int cap = 0;
  int index = 0;
  std::uint64_t seed = 0;
};

struct CapextTrial {
  TrialKey key;
  bool completed = false;
  int extensions = 0;  // odd cycles of length >= 3 in a reduced partition
  std::uint64_t nodes = 0;
};

struct CapextCell {
  int n = 0;
  int cap = 0;
  int trials = 0;
  int completed = 0;
  int skipped = 0;
  int unsolvable = 0;
  std::optional<double> mean_all;
  std::optional<double> mean_unsolvable;
  int max_extensions = 0;
};

struct CapextResult {
  std::vector<CapextCell> cells;  // n-major, in config order
  std::vector<CapextTrial> trials;
};

struct InstabilityTrial {
  TrialKey key;
  bool solvable_known = false;
  bool solvable = false;
  bool madi_completed = false;
  int madi_bp = 0;  // blocking pairs of the total-count optimum
  std::uint64_t madi_nodes = 0;
  bool midi_completed = false;
  int midi_r = 0;            // per-agent optimum
  int midi_total_bp = 0;     // all blocking pairs of that optimum
  std::uint64_t midi_nodes = 0;
};

struct InstabilityCell {
  int n = 0;
  int cap = 0;
  int unsolvable = 0;
  int madi_completed = 0;
  int madi_skipped = 0;
  std::optional<double> madi_mean_bp;
  int madi_max_bp = 0;
  int midi_completed = 0;
  int midi_skipped = 0;
  std::optional<double> midi_mean_total_bp;
  int midi_max_total_bp = 0;
  int midi_max_r = 0;
};

struct InstabilityResult {
  std::vector<InstabilityCell> cells;
  std::vector<InstabilityTrial> trials;
};

namespace detail {

inline std::vector<TrialKey> trial_keys(const ExperimentConfig& cfg) {
  std::vector<TrialKey> keys;
  for (int n : cfg.n_values) {
    for (int c : cfg.cap_values) {
      for (int t = 0; t < cfg.trials; ++t) {
        keys.push_back({n, c, t, trial_seed(cfg.base_seed, n, c, static_cast<std::uint64_t>(t))});
      }
    }
  }
  return keys;
}

inline std::optional<double> mean_of(const std::vector<int>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0;
  for (int x : v) s += x;
  return s / static_cast<double>(v.size());
}

}  // namespace detail

inline CapextTrial run_capext_trial(const TrialKey& key, std::uint64_t gsp_node_budget) {
  CapextTrial rec;
  rec.key = key;
  const SfInstance inst = random_instance(key.n, key.cap, key.seed);
  try {
    GspSearchOptions opt;
    opt.node_budget = gsp_node_budget;
    const auto res = search_gsp(inst, opt);
    rec.completed = true;
    rec.extensions = static_cast<int>(odd_cycles(res.gsp).size());
    rec.nodes = res.nodes;
  } catch (const BudgetExceeded& e) {
    rec.nodes = e.nodes();
  }
  return rec;
}

inline CapextResult summarize_capext(const ExperimentConfig& cfg, std::vector<CapextTrial> trials) {
  CapextResult out;
  for (int n : cfg.n_values) {
    for (int c : cfg.cap_values) {
      CapextCell cell;
      cell.n = n;
      cell.cap = c;
      std::vector<int> all;
      std::vector<int> unsolvable;
      for (const auto& t : trials) {
        if (t.key.n != n || t.key.cap != c) continue;
        ++cell.trials;
        if (!t.completed) {
          ++cell.skipped;
          continue;
        }
        ++cell.completed;
        all.push_back(t.extensions);
        if (t.extensions > 0) unsolvable.push_back(t.extensions);
        cell.max_extensions = std::max(cell.max_extensions, t.extensions);
      }
      cell.unsolvable = static_cast<int>(unsolvable.size());
      cell.mean_all = detail::mean_of(all);
      cell.mean_unsolvable = detail::mean_of(unsolvable);
      out.cells.push_back(cell);
    }
  }
  out.trials = std::move(trials);
  return out;
}

/// Mean number of capacity extensions per cell, over all trials and over the
/// unsolvable ones. Trials whose partition search exceeds its budget are skipped.
inline CapextResult run_capext_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto keys = detail::trial_keys(cfg);
  std::vector<CapextTrial> trials(keys.size());
  parallel_for(keys.size(), cfg.workers, [&](std::size_t i) { trials[i] = run_capext_trial(keys[i], cfg.gsp_node_budget); });
  return summarize_capext(cfg, std::move(trials));
}

/// Solves both corrected ILPs for one trial. Solvable instances have optimum 0
/// and are not sent to the solver. For unsolvable ones the partition certifies
/// at least one blocking pair, which seeds the solver's lower bound.
inline InstabilityTrial run_instability_trial(const TrialKey& key, std::uint64_t gsp_node_budget,
                                              std::uint64_t ilp_node_budget) {
  InstabilityTrial rec;
  rec.key = key;
  const SfInstance inst = random_instance(key.n, key.cap, key.seed);
  try {
    GspSearchOptions gopt;
    gopt.node_budget = gsp_node_budget;
    rec.solvable = odd_cycles(search_gsp(inst, gopt).gsp).empty();
    rec.solvable_known = true;
  } catch (const BudgetExceeded&) {
    return rec;
  }
  if (rec.solvable) {
    rec.madi_completed = rec.midi_completed = true;
    return rec;
  }

  SolveOptions opt;
  opt.node_budget = ilp_node_budget;
  try {
    const IlpModel model = build_madi_model(inst);
    opt.lower_bound = 2;
    const auto res = solve_model(model, opt);
    if (res.status != SolveStatus::Optimal) throw InternalError("total-count model reported infeasible");
    const Matching m = extract_matching(res.values, model);
    rec.madi_bp = static_cast<int>(blocking_pairs(m, inst).size());
    if (2 * rec.madi_bp != res.objective) throw InternalError("total-count optimum disagrees with its matching");
    rec.madi_nodes = res.nodes;
    rec.madi_completed = true;
  } catch (const BudgetExceeded& e) {
    rec.madi_nodes = e.nodes();
  }
  try {
    const IlpModel model = build_midi_model(inst);
    opt.lower_bound = 1;
    const auto res = solve_model(model, opt);
    if (res.status != SolveStatus::Optimal) throw InternalError("per-agent model reported infeasible");
    const Matching m = extract_matching(res.values, model);
    const auto counts = blocking_pair_counts(m, inst);
    rec.midi_r = static_cast<int>(res.objective);
    if (*std::max_element(counts.begin(), counts.end()) != rec.midi_r) {
      throw InternalError("per-agent optimum disagrees with its matching");
    }
    rec.midi_total_bp = static_cast<int>(blocking_pairs(m, inst).size());
    rec.midi_nodes = res.nodes;
    rec.midi_completed = true;
  } catch (const BudgetExceeded& e) {
    rec.midi_nodes = e.nodes();
  }
  return rec;
}

inline InstabilityResult summarize_instability(const ExperimentConfig& cfg, std::vector<InstabilityTrial> trials) {
  InstabilityResult out;
  for (int n : cfg.n_values) {
    for (int c : cfg.cap_values) {
      InstabilityCell cell;
      cell.n = n;
      cell.cap = c;
      std::vector<int> madi;
      std::vector<int> midi;
      for (const auto& t : trials) {
        if (t.key.n != n || t.key.cap != c) continue;
        if (!t.solvable_known) {
          ++cell.madi_skipped;
          ++cell.midi_skipped;
          continue;
        }
        if (t.solvable) continue;
        ++cell.unsolvable;
        if (t.madi_completed) {
          madi.push_back(t.madi_bp);
          cell.madi_max_bp = std::max(cell.madi_max_bp, t.madi_bp);
        } else {
          ++cell.madi_skipped;
        }
        if (t.midi_completed) {
          midi.push_back(t.midi_total_bp);
          cell.midi_max_total_bp = std::max(cell.midi_max_total_bp, t.midi_total_bp);
          cell.midi_max_r = std::max(cell.midi_max_r, t.midi_r);
        } else {
          ++cell.midi_skipped;
        }
      }
      cell.madi_completed = static_cast<int>(madi.size());
      cell.midi_completed = static_cast<int>(midi.size());
      cell.madi_mean_bp = detail::mean_of(madi);
      cell.midi_mean_total_bp = detail::mean_of(midi);
      out.cells.push_back(cell);
    }
  }
  out.trials = std::move(trials);
  return out;
}

/// Per-cell blocking-pair statistics of the two ILP optima over unsolvable
/// trials. Budget-exceeded solves are counted as skipped and left out of means.
inline InstabilityResult run_instability_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto keys = detail::trial_keys(cfg);
  std::vector<InstabilityTrial> trials(keys.size());
  parallel_for(keys.size(), cfg.workers, [&](std::size_t i) {
    trials[i] = run_instability_trial(keys[i], cfg.gsp_node_budget, cfg.ilp_node_budget);
  });
  return summarize_instability(cfg, std::move(trials));
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_cell(const std::optional<double>& v) {
  if (!v) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

/// Whitespace-delimited table: header "n c<cap>...", one row per n ascending.
template <class Cell, class Get>
std::string plot_table(const std::vector<Cell>& cells, Get get) {
  std::vector<int> ns;
  std::vector<int> caps;
  for (const auto& c : cells) {
    if (std::find(ns.begin(), ns.end(), c.n) == ns.end()) ns.push_back(c.n);
    if (std::find(caps.begin(), caps.end(), c.cap) == caps.end()) caps.push_back(c.cap);
  }
  std::sort(ns.begin(), ns.end());
  std::sort(caps.begin(), caps.end());
  std::string out = "n";
  for (int c : caps) out += " c" + std::to_string(c);
  out += "\n";
  for (int n : ns) {
    out += std::to_string(n);
    for (int cap : caps) {
      std::optional<double> v;
      for (const auto& c : cells) {
        if (c.n == n && c.cap == cap) v = get(c);
      }
      out += " " + format_cell(v);
    }
    out += "\n";
  }
  return out;
}

}  // namespace detail

struct PlotFiles {
  std::string capext;      // mean extensions over all trials
  std::string capext2;     // mean extensions over unsolvable trials
  std::string midibp;      // mean total blocking pairs of per-agent optima
};

inline PlotFiles plot_data(const CapextResult* capext, const InstabilityResult* instability) {
  PlotFiles out;
  if (capext) {
    out.capext = detail::plot_table(capext->cells, [](const CapextCell& c) { return c.mean_all; });
    out.capext2 = detail::plot_table(capext->cells, [](const CapextCell& c) { return c.mean_unsolvable; });
  }
  if (instability) {
    out.midibp = detail::plot_table(instability->cells, [](const InstabilityCell& c) { return c.midi_mean_total_bp; });
  }
  return out;
}

inline std::string capext_trials_csv(const CapextResult& r) {
  std::string out = "n,c,trial,seed,completed,extensions,nodes\n";
  for (const auto& t : r.trials) {
    out += std::to_string(t.key.n) + "," + std::to_string(t.key.cap) + "," + std::to_string(t.key.index) + "," +
           std::to_string(t.key.seed) + "," + (t.completed ? "1" : "0") + "," + std::to_string(t.extensions) + "," +
           std::to_string(t.nodes) + "\n";
  }
  return out;
}

inline std::string instability_trials_csv(const InstabilityResult& r) {
  std::string out = "n,c,trial,seed,solvable,madi_completed,madi_bp,madi_nodes,midi_completed,midi_r,midi_total_bp,midi_nodes\n";
  for (const auto& t : r.trials) {
    const std::string solv = !t.solvable_known ? "" : t.solvable ? "1" : "0";
    out += std::to_string(t.key.n) + "," + std::to_string(t.key.cap) + "," + std::to_string(t.key.index) + "," +
           std::to_string(t.key.seed) + "," + solv + "," + (t.madi_completed ? "1" : "0") + "," +
           std::to_string(t.madi_bp) + "," + std::to_string(t.madi_nodes) + "," + (t.midi_completed ? "1" : "0") +
           "," + std::to_string(t.midi_r) + "," + std::to_string(t.midi_total_bp) + "," +
           std::to_string(t.midi_nodes) + "\n";
  }
  return out;
}

inline std::string summary_text(const CapextResult* capext, const InstabilityResult* instability) {
  std::ostringstream os;
  if (capext) {
    os << "capacity extensions\n";
    os << "  n  c  trials  skipped  unsolvable  mean_all  mean_unsolvable  max\n";
    for (const auto& c : capext->cells) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "%3d %2d %7d %8d %11d %9s %16s %4d\n", c.n, c.cap, c.trials, c.skipped,
                    c.unsolvable, detail::format_cell(c.mean_all).c_str(),
                    detail::format_cell(c.mean_unsolvable).c_str(), c.max_extensions);
      os << buf;
    }
  }
  if (instability) {
    os << "ILP optima on unsolvable trials\n";
    os << "  n  c  unsolvable  madi_done  madi_skip  madi_mean_bp  madi_max  midi_done  midi_skip  midi_mean_bp  "
          "midi_max_r\n";
    for (const auto& c : instability->cells) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%3d %2d %11d %10d %10d %13s %9d %10d %10d %13s %11d\n", c.n, c.cap,
                    c.unsolvable, c.madi_completed, c.madi_skipped, detail::format_cell(c.madi_mean_bp).c_str(),
                    c.madi_max_bp, c.midi_completed, c.midi_skipped, detail::format_cell(c.midi_mean_total_bp).c_str(),
                    c.midi_max_r);
      os << buf;
    }
  }
  return os.str();
}

/// Writes capext.txt, capext2.txt, midibp.txt, the per-trial CSVs and
/// summary.txt into dir (created if missing) for whichever results are given.
inline void emit_plot_data(const std::string& dir, const CapextResult* capext, const InstabilityResult* instability) {
  std::filesystem::create_directories(dir);
  const auto files = plot_data(capext, instability);
  const std::filesystem::path base(dir);
  if (capext) {
    write_file((base / "capext.txt").string(), files.capext);
    write_file((base / "capext2.txt").string(), files.capext2);
    write_file((base / "capext_trials.csv").string(), capext_trials_csv(*capext));
  }
  if (instability) {
    write_file((base / "midibp.txt").string(), files.midibp);
    write_file((base / "instability_trials.csv").string(), instability_trials_csv(*instability));
  }
  write_file((base / "summary.txt").string(), summary_text(capext, instability));
}

}  // namespace nfsm

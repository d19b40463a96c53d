#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "indg/best_response.hpp"
#include "indg/equilibrium.hpp"
#include "indg/game.hpp"
#include "indg/graph_io.hpp"
#include "indg/instance_io.hpp"
#include "indg/random_graphs.hpp"

namespace indg {

enum class GraphFamily { ScaleFree, ErdosRenyi, Geometric, File };

inline const char* to_string(GraphFamily f) {
  switch (f) {
    case GraphFamily::ScaleFree: return "sf";
    case GraphFamily::ErdosRenyi: return "er";
    case GraphFamily::Geometric: return "gr";
    case GraphFamily::File: return "file";
  }
  return "?";
}

struct GraphSpec {
  GraphFamily family = GraphFamily::ScaleFree;
  std::size_t init_nodes = 5;
  std::size_t edges_per_node = 6;
  double probability = 0.024;
  double side = 2.0;
  double radius = 0.18;
  std::string path;

  Graph generate(std::size_t n, std::uint64_t seed) const {
    switch (family) {
      case GraphFamily::ScaleFree: return preferential_attachment(n, init_nodes, edges_per_node, seed);
      case GraphFamily::ErdosRenyi: return erdos_renyi(n, probability, seed);
      case GraphFamily::Geometric: return geometric_random(n, side, radius, seed);
      case GraphFamily::File: {
        Graph g = load_edge_list(path);
        if (g.node_count() != n)
          throw ArgumentError("'" + path + "' has " + std::to_string(g.node_count()) + " nodes, expected " +
                              std::to_string(n));
        return g;
      }
    }
    throw ArgumentError("unknown graph family");
  }
};

enum class CostMode { Uniform, Constant };

struct ScenarioConfig {
  std::string name = "scenario";
  GraphSpec g1{};
  GraphSpec g2 = [] {
    GraphSpec s;
    s.edges_per_node = 1;
    return s;
  }();
  bool g2_hub = true;
  NodeIndex hub_node = 0;
  std::size_t n = 500;
  std::size_t m = 5000;
  CostMode cost_mode = CostMode::Uniform;
  double cost_low = 0.01;
  double cost_high = 2500.0;
  double cost_value = 1250.0;
  std::vector<double> benefits{1.2, 0.7, 0.6, 0.5, 0.3, 0.2};
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string dependency_path;  // empty: every player depends on all of V2
  std::size_t threads = 0;      // 0: hardware concurrency

  void check() const {
    if (n < 1 || m < 1) throw ArgumentError("n and m must be at least 1");
    if (trials < 1) throw ArgumentError("trials must be at least 1");
    if (g2_hub && hub_node >= m) throw ArgumentError("g2.hub_node is outside V2");
    BenefitFunction check_table(benefits);
    if (cost_mode == CostMode::Uniform && !(cost_low > 0.0 && cost_low < cost_high))
      throw ArgumentError("uniform costs need 0 < cost.low < cost.high");
    if (cost_mode == CostMode::Constant && !(cost_value > 0.0)) throw ArgumentError("cost.value must be positive");
  }
};

namespace detail {

inline GraphFamily parse_family(const std::string& v, std::size_t line) {
  if (v == "sf") return GraphFamily::ScaleFree;
  if (v == "er") return GraphFamily::ErdosRenyi;
  if (v == "gr") return GraphFamily::Geometric;
  if (v == "file") return GraphFamily::File;
  throw ParseError(line, "unknown graph family '" + v + "' (expected sf, er, gr or file)");
}

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace detail

/// Parses `key = value` lines ('#' starts a comment) on top of `base`.
///
/// Keys: name, n, m, trials, seed, threads, g1.family, g1.init_nodes,
/// g1.edges_per_node, g1.probability, g1.side, g1.radius, g1.path, the same
/// g2.* keys, g2.hub (true/false), g2.hub_node, cost.mode (uniform/constant),
/// cost.low, cost.high, cost.value, benefits (space-separated), dependency
/// (complete or a path to "i j" pairs).
inline ScenarioConfig parse_config(std::string_view input, ScenarioConfig base = {}) {
  ScenarioConfig cfg = std::move(base);
  std::set<std::string> seen;
  for (auto [line_no, raw] : detail::numbered_lines(input)) {
    auto hash = raw.find('#');
    std::string line = detail::trim(hash == std::string_view::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    std::string key = detail::trim(std::string_view(line).substr(0, eq));
    std::string value = detail::trim(std::string_view(line).substr(eq + 1));
    if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
    if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");

    auto count = [&] { return text::parse_number<std::size_t>(value, line_no, key); };
    auto real = [&] { return text::parse_real(value, line_no, key); };
    auto flag = [&] {
      if (value == "true") return true;
      if (value == "false") return false;
      throw ParseError(line_no, key + " must be true or false");
    };
    GraphSpec* gs = nullptr;
    std::string sub;
    if (key.rfind("g1.", 0) == 0) gs = &cfg.g1, sub = key.substr(3);
    else if (key.rfind("g2.", 0) == 0) gs = &cfg.g2, sub = key.substr(3);

    if (key == "name") cfg.name = value;
    else if (key == "n") cfg.n = count();
    else if (key == "m") cfg.m = count();
    else if (key == "trials") cfg.trials = count();
    else if (key == "seed") cfg.seed = text::parse_number<std::uint64_t>(value, line_no, key);
    else if (key == "threads") cfg.threads = count();
    else if (key == "g2.hub") cfg.g2_hub = flag();
    else if (key == "g2.hub_node") cfg.hub_node = text::parse_number<NodeIndex>(value, line_no, key);
    else if (gs && sub == "family") gs->family = detail::parse_family(value, line_no);
    else if (gs && sub == "init_nodes") gs->init_nodes = count();
    else if (gs && sub == "edges_per_node") gs->edges_per_node = count();
    else if (gs && sub == "probability") gs->probability = real();
    else if (gs && sub == "side") gs->side = real();
    else if (gs && sub == "radius") gs->radius = real();
    else if (gs && sub == "path") gs->path = value;
    else if (key == "cost.mode") {
      if (value == "uniform") cfg.cost_mode = CostMode::Uniform;
      else if (value == "constant") cfg.cost_mode = CostMode::Constant;
      else throw ParseError(line_no, "cost.mode must be uniform or constant");
    } else if (key == "cost.low") cfg.cost_low = real();
    else if (key == "cost.high") cfg.cost_high = real();
    else if (key == "cost.value") cfg.cost_value = real();
    else if (key == "benefits") {
      cfg.benefits.clear();
      for (auto tok : text::tokenize(value)) cfg.benefits.push_back(text::parse_real(tok, line_no, "benefit"));
    } else if (key == "dependency") cfg.dependency_path = value == "complete" ? std::string{} : value;
    else throw ParseError(line_no, "unknown key '" + key + "'");
  }
  try {
    cfg.check();
  } catch (const ArgumentError& e) {
    throw ParseError(0, e.what());
  }
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path, ScenarioConfig base = {}) {
  try {
    return parse_config(text::read_file(path), std::move(base));
  } catch (const ParseError& e) {
    throw e.with_source(path);
  }
}

/// Statistics of one trial, computed on the equilibrium's combined graph.
struct TrialStats {
  std::size_t trial = 0;
  std::size_t edge_count_g1 = 0;
  Hops diameter_g1 = Hops::infinite();
  std::size_t total_interconnection_edges = 0;
  std::size_t high_cost_interconnection_edges = 0;
  std::size_t low_cost_players = 0;
  std::size_t low_cost_interconnection_edges = 0;
  double avg_distance_interdependent = 0.0;
  std::size_t unreachable_pairs = 0;
  double social_welfare = 0.0;
  std::size_t builders = 0;

  bool g1_disconnected() const { return !diameter_g1.is_finite(); }
};

struct ScenarioMeans {
  double edge_count_g1 = 0.0;
  std::optional<double> diameter_g1;  // over connected trials only
  double g1_disconnected_fraction = 0.0;
  double total_interconnection_edges = 0.0;
  double high_cost_interconnection_edges = 0.0;
  double low_cost_players = 0.0;
  double avg_distance_interdependent = 0.0;
  double unreachable_pairs = 0.0;
  double social_welfare = 0.0;
};

struct ScenarioReport {
  std::string name;
  std::vector<TrialStats> trials;
  ScenarioMeans mean;
};

inline ScenarioMeans aggregate(const std::vector<TrialStats>& rows) {
  ScenarioMeans out;
  if (rows.empty()) return out;
  const double k = static_cast<double>(rows.size());
  double diam = 0.0;
  std::size_t connected = 0;
  for (const auto& r : rows) {
    out.edge_count_g1 += static_cast<double>(r.edge_count_g1);
    if (r.diameter_g1.is_finite()) {
      diam += r.diameter_g1.value();
      ++connected;
    }
    out.total_interconnection_edges += static_cast<double>(r.total_interconnection_edges);
    out.high_cost_interconnection_edges += static_cast<double>(r.high_cost_interconnection_edges);
    out.low_cost_players += static_cast<double>(r.low_cost_players);
    out.avg_distance_interdependent += r.avg_distance_interdependent;
    out.unreachable_pairs += static_cast<double>(r.unreachable_pairs);
    out.social_welfare += r.social_welfare;
  }
  out.edge_count_g1 /= k;
  if (connected) out.diameter_g1 = diam / static_cast<double>(connected);
  out.g1_disconnected_fraction = static_cast<double>(rows.size() - connected) / k;
  out.total_interconnection_edges /= k;
  out.high_cost_interconnection_edges /= k;
  out.low_cost_players /= k;
  out.avg_distance_interdependent /= k;
  out.unreachable_pairs /= k;
  out.social_welfare /= k;
  return out;
}

/// Instance of one trial. Graph and cost streams are derived separately, so
/// scenarios that differ only in costs share graphs under the same seed.
inline GameInstance build_trial_instance(const ScenarioConfig& cfg, std::size_t trial) {
  std::uint64_t base = mix_seed(cfg.seed, trial);
  Graph g1 = cfg.g1.generate(cfg.n, mix_seed(base, 1));
  Graph g2 = cfg.g2.generate(cfg.m, mix_seed(base, 2));
  if (cfg.g2_hub) g2 = add_hub(g2, cfg.hub_node);
  std::vector<double> costs = cfg.cost_mode == CostMode::Uniform
                                  ? sample_costs(cfg.n, cfg.cost_low, cfg.cost_high, mix_seed(base, 3))
                                  : constant_costs(cfg.n, cfg.cost_value);
  std::vector<PlayerSpec> specs;
  specs.reserve(cfg.n);
  BenefitFunction b(cfg.benefits);
  for (double c : costs) specs.push_back(PlayerSpec{b, c});
  if (cfg.dependency_path.empty()) return GameInstance::complete(std::move(g1), std::move(g2), std::move(specs));

  std::vector<std::pair<NodeIndex, NodeIndex>> deps;
  std::size_t line_no = 0;
  std::string body = text::read_file(cfg.dependency_path);
  for (auto [ln, line] : detail::numbered_lines(body)) {
    line_no = ln;
    auto tok = text::tokenize(line);
    if (tok.empty()) continue;
    if (tok.size() != 2) throw ParseError(line_no, "expected 'i j'", cfg.dependency_path);
    deps.emplace_back(text::parse_number<NodeIndex>(tok[0], line_no, "player"),
                      text::parse_number<NodeIndex>(tok[1], line_no, "G2 node"));
  }
  return GameInstance(std::move(g1), std::move(g2), deps, std::move(specs));
}

/// Statistics of `profile`, which must be the profile `eval` was built from.
inline TrialStats measure_trial(UtilityEvaluator& eval, const StrategyProfile& profile, std::size_t trial) {
  const GameInstance& inst = eval.instance();
  TrialStats s;
  s.trial = trial;
  s.edge_count_g1 = inst.g1().edge_count();
  s.diameter_g1 = inst.n() >= 2 ? diameter(inst.g1()) : Hops(0);
  double dist_sum = 0.0;
  std::size_t finite_pairs = 0;
  for (std::size_t i = 0; i < inst.n(); ++i) {
    const Player& p = inst.player(i);
    const Action& a = profile.actions[i];
    s.total_interconnection_edges += a.size();
    if (classify(p) == CostClass::LowCost) {
      ++s.low_cost_players;
      s.low_cost_interconnection_edges += a.size();
    } else {
      s.high_cost_interconnection_edges += a.size();
    }
    auto d = eval.distances(i, a);
    double benefit = 0.0;
    for (NodeIndex y : p.dependencies) {
      Hops h = d[inst.right(y)];
      if (h.is_finite()) {
        dist_sum += h.value();
        ++finite_pairs;
      } else {
        ++s.unreachable_pairs;
      }
      benefit += p.benefit(h);
    }
    s.social_welfare += benefit - p.edge_cost * static_cast<double>(a.size());
  }
  s.avg_distance_interdependent = finite_pairs ? dist_sum / static_cast<double>(finite_pairs) : 0.0;
  return s;
}

/// Called once per finished trial, possibly from a worker thread.
using TrialObserver =
    std::function<void(std::size_t trial, const GameInstance&, const EquilibriumResult&, const TrialStats&)>;

/// One trial: build the instance, construct the star equilibrium, verify it
/// and measure it. Throws VerificationError if the profile is not an equilibrium.
inline TrialStats run_trial(const ScenarioConfig& cfg, std::size_t trial, const TrialObserver& observer = {}) {
  GameInstance inst = build_trial_instance(cfg, trial);
  EquilibriumResult eq = star_nash_equilibrium(inst);
  UtilityEvaluator eval(inst, eq.profile);
  NashCheck check = is_nash_equilibrium(eval, eq.profile, NashMode::StarRestricted);
  if (!check.is_equilibrium)
    throw VerificationError("trial " + std::to_string(trial) + " of '" + cfg.name + "': player " +
                            std::to_string(*check.deviator) + " can improve from " +
                            std::to_string(check.current_utility) + " to " +
                            std::to_string(check.deviation->utility));
  TrialStats s = measure_trial(eval, eq.profile, trial);
  s.builders = eq.trace.builders.size();
  if (observer) observer(trial, inst, eq, s);
  return s;
}

/// Runs every trial on a worker pool; results are in trial order.
inline ScenarioReport run_scenario(const ScenarioConfig& cfg, const TrialObserver& observer = {}) {
  cfg.check();
  ScenarioReport report;
  report.name = cfg.name;
  report.trials.resize(cfg.trials);
  std::size_t workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, cfg.trials);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (;;) {
      std::size_t t = next.fetch_add(1);
      if (t >= cfg.trials) return;
      try {
        report.trials[t] = run_trial(cfg, t, observer);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.trials;
        return;
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  report.mean = aggregate(report.trials);
  return report;
}

enum class ReportFormat { Csv, Table };

namespace detail {

inline std::string fixed(double v, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

}  // namespace detail

inline std::string format_csv(const ScenarioReport& r) {
  std::ostringstream out;
  out << "trial,edge_count_g1,diameter_g1,g1_disconnected,total_interconnection_edges,"
         "high_cost_interconnection_edges,low_cost_players,avg_distance_interdependent,unreachable_pairs,"
         "social_welfare\n";
  for (const auto& t : r.trials) {
    out << t.trial << ',' << t.edge_count_g1 << ',';
    if (t.diameter_g1.is_finite()) out << t.diameter_g1.value();
    out << ',' << (t.g1_disconnected() ? 1 : 0) << ',' << t.total_interconnection_edges << ','
        << t.high_cost_interconnection_edges << ',' << t.low_cost_players << ','
        << detail::fixed(t.avg_distance_interdependent, 6) << ',' << t.unreachable_pairs << ','
        << detail::fixed(t.social_welfare, 6) << '\n';
  }
  const auto& m = r.mean;
  out << "mean," << detail::fixed(m.edge_count_g1, 6) << ',';
  if (m.diameter_g1) out << detail::fixed(*m.diameter_g1, 6);
  out << ',' << detail::fixed(m.g1_disconnected_fraction, 6) << ',' << detail::fixed(m.total_interconnection_edges, 6)
      << ',' << detail::fixed(m.high_cost_interconnection_edges, 6) << ',' << detail::fixed(m.low_cost_players, 6)
      << ',' << detail::fixed(m.avg_distance_interdependent, 6) << ',' << detail::fixed(m.unreachable_pairs, 6)
      << ',' << detail::fixed(m.social_welfare, 6) << '\n';
  return out.str();
}

/// Side-by-side table of scenario means, one column per report.
inline std::string format_table(const std::vector<ScenarioReport>& reports) {
  std::vector<std::string> labels{"|E1|",
                                  "Diameter of G1",
                                  "Total interconnection edges",
                                  "High-cost interconnection edges",
                                  "Low-cost players",
                                  "Average distance between interdependent nodes",
                                  "Social welfare"};
  std::vector<std::vector<std::string>> cols;
  for (const auto& r : reports) {
    const auto& m = r.mean;
    std::string diam = m.diameter_g1 ? detail::fixed(*m.diameter_g1, 2) : std::string("inf");
    if (m.diameter_g1 && m.g1_disconnected_fraction > 0.0)
      diam += " (inf in " + detail::fixed(100.0 * m.g1_disconnected_fraction, 0) + "%)";
    cols.push_back({detail::fixed(m.edge_count_g1, 1), diam, detail::fixed(m.total_interconnection_edges, 1),
                    detail::fixed(m.high_cost_interconnection_edges, 1), detail::fixed(m.low_cost_players, 2),
                    detail::fixed(m.avg_distance_interdependent, 2), detail::fixed(m.social_welfare, 1)});
  }
  std::size_t w0 = 0;
  for (const auto& l : labels) w0 = std::max(w0, l.size());
  std::vector<std::size_t> w;
  for (std::size_t c = 0; c < reports.size(); ++c) {
    std::size_t width = reports[c].name.size();
    for (const auto& cell : cols[c]) width = std::max(width, cell.size());
    w.push_back(width);
  }
  std::ostringstream out;
  auto rule = [&] {
    out << '+' << std::string(w0 + 2, '-');
    for (std::size_t width : w) out << '+' << std::string(width + 2, '-');
    out << "+\n";
  };
  rule();
  out << "| " << std::left << std::setw(static_cast<int>(w0)) << "" << ' ';
  for (std::size_t c = 0; c < reports.size(); ++c)
    out << "| " << std::right << std::setw(static_cast<int>(w[c])) << reports[c].name << ' ';
  out << "|\n";
  rule();
  for (std::size_t row = 0; row < labels.size(); ++row) {
    out << "| " << std::left << std::setw(static_cast<int>(w0)) << labels[row] << ' ';
    for (std::size_t c = 0; c < reports.size(); ++c)
      out << "| " << std::right << std::setw(static_cast<int>(w[c])) << cols[c][row] << ' ';
    out << "|\n";
  }
  rule();
  return out.str();
}

inline std::string emit_report(const ScenarioReport& r, ReportFormat format) {
  return format == ReportFormat::Csv ? format_csv(r) : format_table({r});
}

/// Graphviz rendering of the combined graph with three edge classes.
inline std::string format_dot(const GameInstance& inst, const StrategyProfile& profile) {
  inst.validate(profile);
  std::ostringstream out;
  out << "graph indg {\n";
  out << "  node [shape=circle];\n";
  for (std::size_t x = 0; x < inst.n(); ++x) out << "  x" << x << " [group=g1];\n";
  for (std::size_t y = 0; y < inst.m(); ++y) out << "  y" << y << " [group=g2, shape=box];\n";
  for (auto [u, v] : inst.g1().edges()) out << "  x" << u << " -- x" << v << " [class=g1, color=black];\n";
  for (auto [u, v] : inst.g2().edges()) out << "  y" << u << " -- y" << v << " [class=g2, color=blue];\n";
  for (std::size_t i = 0; i < inst.n(); ++i)
    for (NodeIndex y : profile.actions[i])
      out << "  x" << i << " -- y" << y << " [class=interconnect, color=red, style=dashed];\n";
  out << "}\n";
  return out.str();
}

inline void export_dot(const GameInstance& inst, const StrategyProfile& profile, const std::string& path) {
  text::write_file(path, format_dot(inst, profile));
}

}  // namespace indg

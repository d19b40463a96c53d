#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "indg/indg.hpp"

using namespace indg;
using json = nlohmann::json;

namespace {

enum ExitCode : int {
  kOk = 0,
  kNegative = 1,  // verify-ne found a deviation
  kUsage = 2,
  kArgument = 3,
  kParse = 4,
  kIo = 5,
  kCapacity = 6,
  kVerification = 7,
  kInternal = 10,
};

struct Common {
  std::string out;
  std::string format = "table";
};

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    text::write_file(c.out, text);
  }
}

json hops_json(Hops h) { return h.is_finite() ? json(h.value()) : json("inf"); }

json action_json(const Action& a) { return json(a); }

NashMode parse_mode(const std::string& m) { return m == "brute" ? NashMode::BruteForce : NashMode::StarRestricted; }

void add_out(CLI::App* sub, Common& c) { sub->add_option("--out", c.out, "Write output to this path"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interconnection network design game toolkit"};
  app.require_subcommand(1);
  Common common;

  // simulate
  std::vector<std::string> configs;
  std::optional<std::size_t> sim_trials, sim_threads;
  std::optional<std::uint64_t> sim_seed;
  std::string sim_dot;
  auto* simulate = app.add_subcommand("simulate", "Run scenario configs and report statistics");
  simulate->add_option("config", configs, "Scenario config file(s)")->required()->check(CLI::ExistingFile);
  simulate->add_option("--trials", sim_trials, "Override the trial count")->check(CLI::PositiveNumber);
  simulate->add_option("--seed", sim_seed, "Override the base seed");
  simulate->add_option("--threads", sim_threads, "Worker threads (0 = hardware)");
  simulate->add_option("--format", common.format, "csv or table")->check(CLI::IsMember({"csv", "table"}));
  simulate->add_option("--dot", sim_dot, "Export trial 0 of the first config as DOT");
  add_out(simulate, common);

  // equilibrium
  std::string inst_path, profile_path;
  std::string eq_dot;
  bool eq_verify = false;
  auto* equilibrium = app.add_subcommand("equilibrium", "Construct a star-instance Nash equilibrium");
  equilibrium->add_option("instance", inst_path, "Instance file")->required();
  equilibrium->add_option("--dot", eq_dot, "Export the equilibrium network as DOT");
  equilibrium->add_flag("--verify-brute", eq_verify, "Also verify by exhaustive best responses");
  add_out(equilibrium, common);

  // best-response
  std::size_t br_player = 0;
  std::string br_mode = "brute";
  auto* best_response = app.add_subcommand("best-response", "Best response of one player");
  best_response->add_option("instance", inst_path, "Instance file")->required();
  best_response->add_option("--player", br_player, "Player index (0-based)")->required();
  best_response->add_option("--profile", profile_path, "Profile of the other players (default: empty)");
  best_response->add_option("--mode", br_mode, "brute or star")->check(CLI::IsMember({"brute", "star"}));
  add_out(best_response, common);

  // verify-ne
  std::string ne_mode = "brute";
  auto* verify = app.add_subcommand("verify-ne", "Check whether a profile is a Nash equilibrium");
  verify->add_option("instance", inst_path, "Instance file")->required();
  verify->add_option("profile", profile_path, "Profile file")->required();
  verify->add_option("--mode", ne_mode, "brute or star")->check(CLI::IsMember({"brute", "star"}));
  add_out(verify, common);

  // poa
  std::size_t poa_budget = kDefaultJointBudget;
  auto* poa = app.add_subcommand("poa", "Exhaustive price of anarchy on a small instance");
  poa->add_option("instance", inst_path, "Instance file")->required();
  poa->add_option("--budget", poa_budget, "Maximum n*m for joint enumeration");
  add_out(poa, common);

  // reduce-ds
  std::string graph_path;
  std::size_t ds_k = 0;
  bool ds_decide = false;
  auto* reduce = app.add_subcommand("reduce-ds", "Reduce dominating set to a best-response instance");
  reduce->add_option("graph", graph_path, "Edge-list file")->required();
  reduce->add_option("--k", ds_k, "Dominating set size")->required();
  reduce->add_flag("--decide", ds_decide, "Also decide both problems by brute force");
  add_out(reduce, common);

  // gen
  std::string family;
  std::size_t gen_n = 500, gen_init = 5, gen_k = 6;
  double gen_p = 0.024, gen_side = 2.0, gen_radius = 0.18;
  std::uint64_t gen_seed = 1;
  std::optional<NodeIndex> gen_hub;
  auto* gen = app.add_subcommand("gen", "Generate a random graph as an edge list");
  gen->add_option("family", family, "sf, er or gr")->required()->check(CLI::IsMember({"sf", "er", "gr"}));
  gen->add_option("--n", gen_n, "Node count");
  gen->add_option("--init", gen_init, "sf: seed clique size");
  gen->add_option("--k", gen_k, "sf: edges per new node");
  gen->add_option("--p", gen_p, "er: edge probability");
  gen->add_option("--side", gen_side, "gr: square side");
  gen->add_option("--radius", gen_radius, "gr: connection radius");
  gen->add_option("--seed", gen_seed, "RNG seed");
  gen->add_option("--hub", gen_hub, "Connect this node to every other node");
  add_out(gen, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (simulate->parsed()) {
      std::vector<ScenarioReport> reports;
      for (const auto& path : configs) {
        ScenarioConfig cfg = load_config(path);
        if (sim_trials) cfg.trials = *sim_trials;
        if (sim_seed) cfg.seed = *sim_seed;
        if (sim_threads) cfg.threads = *sim_threads;
        cfg.check();
        TrialObserver observer;
        if (!sim_dot.empty() && reports.empty())
          observer = [&](std::size_t trial, const GameInstance& inst, const EquilibriumResult& eq, const TrialStats&) {
            if (trial == 0) export_dot(inst, eq.profile, sim_dot);
          };
        reports.push_back(run_scenario(cfg, observer));
      }
      std::string text;
      if (common.format == "table") {
        text = format_table(reports);
      } else {
        for (std::size_t r = 0; r < reports.size(); ++r) {
          if (reports.size() > 1) text += (r ? "\n# " : "# ") + reports[r].name + '\n';
          text += format_csv(reports[r]);
        }
      }
      emit(common, text);
    } else if (equilibrium->parsed()) {
      auto inst = load_instance(inst_path);
      auto eq = star_nash_equilibrium(inst);
      auto roles = free_rider_report(eq.trace);
      json players = json::array();
      for (std::size_t i = 0; i < inst.n(); ++i) {
        json p{{"player", i},
               {"class", to_string(classify(inst.player(i)))},
               {"role", to_string(roles[i].role)},
               {"action", action_json(eq.profile.actions[i])}};
        if (classify(inst.player(i)) == CostClass::HighCost) {
          p["l_radius"] = hops_json(eq.trace.l_radii[i]);
          p["r_radius"] = hops_json(eq.trace.r_radii[i]);
        }
        if (roles[i].via) p["via"] = *roles[i].via;
        players.push_back(std::move(p));
      }
      json suppressed = json::object(), near = json::object();
      for (auto [i, b] : eq.trace.suppressed) suppressed[std::to_string(i)] = b;
      for (auto [i, l] : eq.trace.near_low_cost) near[std::to_string(i)] = l;
      json out{{"hub", eq.trace.hub},
               {"s_low", eq.trace.s_low},
               {"s_h_inf", eq.trace.s_h_inf},
               {"s_h_l", eq.trace.s_h_l},
               {"builders", eq.trace.builders},
               {"suppressed", suppressed},
               {"near_low_cost", near},
               {"decision_order", eq.trace.decision_order},
               {"players", players},
               {"social_welfare", social_welfare(inst, eq.profile)},
               {"profile", format_profile(eq.profile)}};
      if (eq_verify) out["brute_force_equilibrium"] = is_nash_equilibrium(inst, eq.profile, NashMode::BruteForce).is_equilibrium;
      if (!eq_dot.empty()) export_dot(inst, eq.profile, eq_dot);
      emit(common, out.dump(2));
    } else if (best_response->parsed()) {
      auto inst = load_instance(inst_path);
      auto profile = profile_path.empty() ? StrategyProfile::empty(inst.n()) : load_profile(profile_path, inst);
      if (br_player >= inst.n())
        throw ArgumentError("player " + std::to_string(br_player) + " out of range 0.." + std::to_string(inst.n() - 1));
      BestResponseResult br;
      if (br_mode == "brute") {
        br = brute_force_best_response(inst, profile, br_player);
      } else {
        br = star_best_response(inst, profile, br_player, detail::require_star_instance(inst));
      }
      json rules = json::array();
      for (auto r : br.pruning_trace) rules.push_back(to_string(r));
      json out{{"player", br_player}, {"action", action_json(br.action)}, {"utility", br.utility},
               {"pruning_trace", rules}};
      emit(common, out.dump(2));
    } else if (verify->parsed()) {
      auto inst = load_instance(inst_path);
      auto profile = load_profile(profile_path, inst);
      auto check = is_nash_equilibrium(inst, profile, parse_mode(ne_mode));
      json out{{"equilibrium", check.is_equilibrium}};
      if (!check.is_equilibrium) {
        out["deviator"] = *check.deviator;
        out["current_utility"] = check.current_utility;
        out["better_action"] = action_json(check.deviation->action);
        out["better_utility"] = check.deviation->utility;
      }
      emit(common, out.dump(2));
      return check.is_equilibrium ? kOk : kNegative;
    } else if (poa->parsed()) {
      auto inst = load_instance(inst_path);
      auto r = price_of_anarchy(inst, poa_budget);
      json out{{"status", to_string(r.status)},
               {"optimal_welfare", r.optimal_welfare},
               {"min_equilibrium_welfare", r.min_equilibrium_welfare},
               {"equilibrium_count", r.equilibrium_count},
               {"optimum", format_profile(r.optimum)}};
      if (r.status == PoaStatus::Finite) out["poa"] = r.poa;
      json worst = json::array();
      for (const auto& w : r.worst_equilibria) worst.push_back(format_profile(w));
      out["worst_equilibria"] = worst;
      emit(common, out.dump(2));
    } else if (reduce->parsed()) {
      Graph g = load_edge_list(graph_path);
      auto bri = reduce_dominating_set(g, ds_k);
      std::string text = "# best-response threshold " + detail::format_real(bri.threshold) + " for player " +
                         std::to_string(bri.player) + "\n";
      if (ds_decide) {
        text += std::string("# dominating set of size <= ") + std::to_string(ds_k) + ": " +
                (decide_dominating_set_brute(g, ds_k) ? "yes" : "no") + "\n";
        text += std::string("# best response reaches threshold: ") + (decide_bri_brute(bri) ? "yes" : "no") + "\n";
      }
      text += format_instance(bri.game);
      emit(common, text);
    } else if (gen->parsed()) {
      Graph g;
      std::string header;
      if (family == "sf") {
        g = preferential_attachment(gen_n, gen_init, gen_k, gen_seed);
        header = "sf n=" + std::to_string(gen_n) + " init=" + std::to_string(gen_init) + " k=" + std::to_string(gen_k);
      } else if (family == "er") {
        g = erdos_renyi(gen_n, gen_p, gen_seed);
        header = "er n=" + std::to_string(gen_n) + " p=" + detail::format_real(gen_p);
      } else {
        g = geometric_random(gen_n, gen_side, gen_radius, gen_seed);
        header = "gr n=" + std::to_string(gen_n) + " side=" + detail::format_real(gen_side) +
                 " radius=" + detail::format_real(gen_radius);
      }
      if (gen_hub) {
        g = add_hub(g, *gen_hub);
        header += " hub=" + std::to_string(*gen_hub);
      }
      header += " seed=" + std::to_string(gen_seed);
      emit(common, format_edge_list(g, header));
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kParse;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << '\n';
    return kIo;
  } catch (const CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kCapacity;
  } catch (const ArgumentError& e) {
    std::cerr << "argument error: " << e.what() << '\n';
    return kArgument;
  } catch (const VerificationError& e) {
    std::cerr << "verification error: " << e.what() << '\n';
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kOk;
}

#pragma once

#include <iomanip>
#include <limits>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indg/game.hpp"
#include "indg/graph_io.hpp"

namespace indg {

// Instance file grammar (0-based indices, '#' starts a comment):
//
//   g1 <n>                      header, then one "u v" edge per line
//   g2 <m>                      header, then one "u v" edge per line
//   dependencies [complete]     "complete" means E_I = V1 x V2; otherwise one
//                               "i j" pair per line meaning x_i -- y_j
//   player <i> cost <c> benefits <b1> <b2> ... <bK>
//
// Sections appear in this order and every player 0..n-1 appears exactly once.
//
// Profile file grammar:
//
//   profile <n>
//   <i>: <j> <j> ...            edges x_i -- y_j; unlisted players are empty

namespace detail {

inline std::vector<std::pair<std::size_t, std::string_view>> numbered_lines(std::string_view input) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t line_no = 0;
  while (!input.empty()) {
    auto nl = input.find('\n');
    out.emplace_back(++line_no, input.substr(0, nl));
    input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);
  }
  return out;
}

inline std::string format_real(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  // Prefer the short form when it round-trips.
  std::ostringstream shortest;
  shortest << std::setprecision(15) << v;
  return std::stod(shortest.str()) == v ? shortest.str() : os.str();
}

}  // namespace detail

inline GameInstance parse_instance(std::string_view input) {
  enum class Section { None, G1, G2, Dependencies, Players };
  Section section = Section::None;
  std::size_t n = 0, m = 0;
  std::vector<std::pair<NodeIndex, NodeIndex>> e1, e2, deps;
  bool complete = false;
  std::vector<std::optional<PlayerSpec>> specs;
  std::set<std::pair<NodeIndex, NodeIndex>> seen_deps;

  auto read_pair = [](const std::vector<std::string_view>& tok, std::size_t line) {
    if (tok.size() != 2) throw ParseError(line, "expected a pair 'u v'");
    return std::pair{text::parse_number<NodeIndex>(tok[0], line, "node index"),
                     text::parse_number<NodeIndex>(tok[1], line, "node index")};
  };
  std::set<std::pair<NodeIndex, NodeIndex>> seen_edges;
  auto check_edge = [&](std::pair<NodeIndex, NodeIndex> e, std::size_t count,
                        std::vector<std::pair<NodeIndex, NodeIndex>>& edges, std::size_t line) {
    if (e.first >= count || e.second >= count)
      throw ParseError(line, "node index out of range (size " + std::to_string(count) + ")");
    if (e.first == e.second) throw ParseError(line, "self-loop at node " + std::to_string(e.first));
    if (!seen_edges.insert(std::minmax(e.first, e.second)).second) throw ParseError(line, "duplicate edge");
    edges.push_back(e);
  };

  std::size_t last_line = 0;
  for (auto [line_no, line] : detail::numbered_lines(input)) {
    last_line = line_no;
    auto tok = text::tokenize(line);
    if (tok.empty()) continue;
    const auto& head = tok[0];

    if (head == "g1") {
      if (section != Section::None) throw ParseError(line_no, "'g1' must be the first section");
      if (tok.size() != 2) throw ParseError(line_no, "expected 'g1 <n>'");
      n = text::parse_number<std::size_t>(tok[1], line_no, "node count");
      if (n == 0) throw ParseError(line_no, "G1 needs at least one node");
      specs.resize(n);
      section = Section::G1;
    } else if (head == "g2") {
      if (section != Section::G1) throw ParseError(line_no, "'g2' must follow the g1 section");
      if (tok.size() != 2) throw ParseError(line_no, "expected 'g2 <m>'");
      m = text::parse_number<std::size_t>(tok[1], line_no, "node count");
      if (m == 0) throw ParseError(line_no, "G2 needs at least one node");
      seen_edges.clear();
      section = Section::G2;
    } else if (head == "dependencies") {
      if (section != Section::G2) throw ParseError(line_no, "'dependencies' must follow the g2 section");
      if (tok.size() == 2 && tok[1] == "complete") complete = true;
      else if (tok.size() != 1) throw ParseError(line_no, "expected 'dependencies' or 'dependencies complete'");
      section = Section::Dependencies;
    } else if (head == "player") {
      if (section != Section::Dependencies && section != Section::Players)
        throw ParseError(line_no, "player lines must follow the dependencies section");
      section = Section::Players;
      if (tok.size() < 6 || tok[2] != "cost" || tok[4] != "benefits")
        throw ParseError(line_no, "expected 'player <i> cost <c> benefits <b1> ... <bK>'");
      auto i = text::parse_number<std::size_t>(tok[1], line_no, "player index");
      if (i >= n) throw ParseError(line_no, "player " + std::to_string(i) + " is outside 0.." + std::to_string(n - 1));
      if (specs[i]) throw ParseError(line_no, "player " + std::to_string(i) + " defined twice");
      double cost = text::parse_real(tok[3], line_no, "edge cost");
      if (!(cost > 0.0)) throw ParseError(line_no, "edge cost must be positive");
      std::vector<double> table;
      for (std::size_t k = 5; k < tok.size(); ++k) table.push_back(text::parse_real(tok[k], line_no, "benefit"));
      try {
        specs[i] = PlayerSpec{BenefitFunction(std::move(table)), cost};
      } catch (const ArgumentError& e) {
        throw ParseError(line_no, e.what());
      }
    } else {
      switch (section) {
        case Section::G1: check_edge(read_pair(tok, line_no), n, e1, line_no); break;
        case Section::G2: check_edge(read_pair(tok, line_no), m, e2, line_no); break;
        case Section::Dependencies: {
          if (complete) throw ParseError(line_no, "no pairs allowed after 'dependencies complete'");
          auto [i, j] = read_pair(tok, line_no);
          if (i >= n || j >= m) throw ParseError(line_no, "dependency outside V1 x V2");
          if (!seen_deps.insert({i, j}).second) throw ParseError(line_no, "duplicate dependency");
          deps.emplace_back(i, j);
          break;
        }
        default: throw ParseError(line_no, "unexpected '" + std::string(head) + "'");
      }
    }
  }
  if (section != Section::Players) throw ParseError(last_line, "incomplete instance: expected g1, g2, dependencies and player sections");
  std::vector<PlayerSpec> players;
  for (std::size_t i = 0; i < n; ++i) {
    if (!specs[i]) throw ParseError(last_line, "player " + std::to_string(i) + " is missing");
    players.push_back(std::move(*specs[i]));
  }
  Graph g1(n, e1), g2(m, e2);
  if (complete) return GameInstance::complete(std::move(g1), std::move(g2), std::move(players));
  return GameInstance(std::move(g1), std::move(g2), deps, std::move(players));
}

inline std::string format_instance(const GameInstance& inst) {
  std::ostringstream out;
  out << "g1 " << inst.n() << '\n';
  for (auto [u, v] : inst.g1().edges()) out << u << ' ' << v << '\n';
  out << "g2 " << inst.m() << '\n';
  for (auto [u, v] : inst.g2().edges()) out << u << ' ' << v << '\n';
  if (inst.dependency_complete()) {
    out << "dependencies complete\n";
  } else {
    out << "dependencies\n";
    for (auto [x, y] : inst.dependency_edges()) out << x << ' ' << y << '\n';
  }
  for (const Player& p : inst.players()) {
    out << "player " << p.home << " cost " << detail::format_real(p.edge_cost) << " benefits";
    for (double b : p.benefit.table()) out << ' ' << detail::format_real(b);
    out << '\n';
  }
  return out.str();
}

inline GameInstance load_instance(const std::string& path) {
  try {
    return parse_instance(text::read_file(path));
  } catch (const ParseError& e) {
    throw e.with_source(path);
  }
}

inline StrategyProfile parse_profile(std::string_view input, const GameInstance& inst) {
  std::optional<StrategyProfile> profile;
  std::vector<char> seen;
  for (auto [line_no, line] : detail::numbered_lines(input)) {
    auto tok = text::tokenize(line);
    if (tok.empty()) continue;
    if (!profile) {
      if (tok.size() != 2 || tok[0] != "profile") throw ParseError(line_no, "expected header 'profile <n>'");
      auto n = text::parse_number<std::size_t>(tok[1], line_no, "player count");
      if (n != inst.n())
        throw ParseError(line_no, "profile has " + std::to_string(n) + " players, instance has " +
                                      std::to_string(inst.n()));
      profile = StrategyProfile::empty(n);
      seen.assign(n, 0);
      continue;
    }
    auto head = tok[0];
    if (head.empty() || head.back() != ':') throw ParseError(line_no, "expected '<i>: <j> ...'");
    auto i = text::parse_number<std::size_t>(head.substr(0, head.size() - 1), line_no, "player index");
    if (i >= inst.n()) throw ParseError(line_no, "player index out of range");
    if (seen[i]) throw ParseError(line_no, "player " + std::to_string(i) + " listed twice");
    seen[i] = 1;
    Action a;
    for (std::size_t k = 1; k < tok.size(); ++k) {
      auto y = text::parse_number<NodeIndex>(tok[k], line_no, "G2 node index");
      if (y >= inst.m()) throw ParseError(line_no, "G2 node " + std::to_string(y) + " out of range");
      a.push_back(y);
    }
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) throw ParseError(line_no, "duplicate edge in action");
    profile->actions[i] = std::move(a);
  }
  if (!profile) throw ParseError(0, "missing header 'profile <n>'");
  return *profile;
}

inline std::string format_profile(const StrategyProfile& profile) {
  std::ostringstream out;
  out << "profile " << profile.actions.size() << '\n';
  for (std::size_t i = 0; i < profile.actions.size(); ++i) {
    out << i << ':';
    for (NodeIndex y : profile.actions[i]) out << ' ' << y;
    out << '\n';
  }
  return out.str();
}

inline StrategyProfile load_profile(const std::string& path, const GameInstance& inst) {
  try {
    return parse_profile(text::read_file(path), inst);
  } catch (const ParseError& e) {
    throw e.with_source(path);
  }
}

}  // namespace indg

#pragma once

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indg/graph.hpp"

namespace indg {

namespace text {

// Splits a line into whitespace-separated tokens, dropping anything after '#'.
inline std::vector<std::string_view> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T>
T parse_number(std::string_view token, std::size_t line, std::string_view what) {
  T value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(line, "expected " + std::string(what) + ", got '" + std::string(token) + "'");
  return value;
}

// from_chars for double is available in libstdc++ 11 as well.
inline double parse_real(std::string_view token, std::size_t line, std::string_view what) {
  return parse_number<double>(token, line, what);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  if (!out) throw IoError("error while writing '" + path + "'");
}

}  // namespace text

/// Parses the edge-list format:
///
///     # optional comments
///     n 6
///     0 1
///     1 2
///
/// Indices are 0-based. Self-loops, duplicate edges and out-of-range
/// endpoints are rejected with the offending line number.
inline Graph parse_edge_list(std::string_view input) {
  std::size_t line_no = 0;
  std::optional<std::size_t> node_count;
  std::vector<std::pair<NodeIndex, NodeIndex>> edges;
  std::vector<std::vector<NodeIndex>> seen;

  while (!input.empty()) {
    auto nl = input.find('\n');
    auto line = input.substr(0, nl);
    input = nl == std::string_view::npos ? std::string_view{} : input.substr(nl + 1);
    ++line_no;
    auto tok = text::tokenize(line);
    if (tok.empty()) continue;

    if (!node_count) {
      if (tok.size() != 2 || tok[0] != "n") throw ParseError(line_no, "expected header 'n <node_count>'");
      node_count = text::parse_number<std::size_t>(tok[1], line_no, "node count");
      seen.resize(*node_count);
      continue;
    }
    if (tok.size() != 2) throw ParseError(line_no, "expected an edge 'u v'");
    auto u = text::parse_number<NodeIndex>(tok[0], line_no, "node index");
    auto v = text::parse_number<NodeIndex>(tok[1], line_no, "node index");
    if (u >= *node_count || v >= *node_count)
      throw ParseError(line_no, "node index out of range (n = " + std::to_string(*node_count) + ")");
    if (u == v) throw ParseError(line_no, "self-loop at node " + std::to_string(u));
    auto& su = seen[std::min(u, v)];
    if (std::find(su.begin(), su.end(), std::max(u, v)) != su.end())
      throw ParseError(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
    su.push_back(std::max(u, v));
    edges.emplace_back(u, v);
  }
  if (!node_count) throw ParseError(line_no, "missing header 'n <node_count>'");
  return Graph(*node_count, edges);
}

/// Writes sorted edges so that parse -> write is byte-stable.
inline std::string format_edge_list(const Graph& g, std::string_view header_comment = {}) {
  std::ostringstream out;
  if (!header_comment.empty()) out << "# " << header_comment << '\n';
  out << "n " << g.node_count() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

inline Graph load_edge_list(const std::string& path) {
  try {
    return parse_edge_list(text::read_file(path));
  } catch (const ParseError& e) {
    throw e.with_source(path);
  }
}

}  // namespace indg

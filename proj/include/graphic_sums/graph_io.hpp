#pragma once

#include <cctype>
#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

class parse_error : public graph_error {
 public:
  parse_error(const std::string& what, std::size_t line)
      : graph_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  /// 1-based line of the offending input, 0 when not line-specific.
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

struct ParsedGraph {
  Digraph graph;
  /// Number of repeated arcs that were collapsed.
  std::size_t duplicate_arcs = 0;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline bool parse_count(std::string_view token, long long& out) {
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

inline ParsedGraph build(std::vector<std::vector<Node>> adj) {
  std::size_t raw = 0;
  for (const auto& list : adj) raw += list.size();
  Digraph g(std::move(adj));
  const std::size_t duplicates = raw - g.arc_count();
  return {std::move(g), duplicates};
}

inline ParsedGraph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw_line;
  std::size_t line_no = 0;
  long long n = -1;
  std::vector<std::vector<Node>> adj;
  while (std::getline(in, raw_line)) {
    ++line_no;
    const auto line = trim(raw_line);
    if (line.empty() || line.front() == '#') continue;
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      const std::size_t start = pos;
      while (pos < line.size() && !std::isspace(static_cast<unsigned char>(line[pos]))) ++pos;
      if (pos > start) tokens.push_back(line.substr(start, pos - start));
    }
    if (n < 0) {
      if (tokens.size() != 1 || !parse_count(tokens[0], n))
        throw parse_error("expected node count", line_no);
      if (n < 1) throw parse_error("node count must be at least 1", line_no);
      adj.assign(static_cast<std::size_t>(n), {});
      continue;
    }
    long long u = 0;
    long long v = 0;
    if (tokens.size() != 2 || !parse_count(tokens[0], u) || !parse_count(tokens[1], v))
      throw parse_error("expected \"u v\"", line_no);
    for (long long w : {u, v})
      if (w < 1 || w > n)
        throw parse_error("node " + std::to_string(w) + " out of range 1.." + std::to_string(n), line_no);
    adj[static_cast<std::size_t>(u - 1)].push_back(static_cast<Node>(v - 1));
  }
  if (n < 0) throw parse_error("missing node count", 0);
  return build(std::move(adj));
}

inline ParsedGraph parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("malformed JSON: ") + e.what(), 0);
  }
  if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
    throw parse_error("JSON graph needs integer field \"n\"", 0);
  const long long n = doc["n"].get<long long>();
  if (n < 1) throw parse_error("node count must be at least 1", 0);
  if (!doc.contains("adj") || !doc["adj"].is_array() || doc["adj"].size() != static_cast<std::size_t>(n))
    throw parse_error("\"adj\" must be an array of n lists", 0);
  std::vector<std::vector<Node>> adj(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < adj.size(); ++i) {
    const auto& row = doc["adj"][i];
    if (!row.is_array()) throw parse_error("adj[" + std::to_string(i) + "] is not an array", 0);
    for (const auto& item : row) {
      if (!item.is_number_integer()) throw parse_error("non-integer node in adj", 0);
      const long long w = item.get<long long>();
      if (w < 1 || w > n)
        throw parse_error("node " + std::to_string(w) + " out of range 1.." + std::to_string(n), 0);
      adj[i].push_back(static_cast<Node>(w - 1));
    }
  }
  return build(std::move(adj));
}

}  // namespace detail

/// Parses either format: a JSON object {"n":..,"adj":[..]} or the edge list
/// ("n" on the first data line, then one "u v" arc per line, '#' comments).
inline ParsedGraph parse_graph(std::string_view text) {
  const auto body = detail::trim(text);
  if (!body.empty() && body.front() == '{') return detail::parse_json(body);
  return detail::parse_edge_list(text);
}

inline std::string render_edge_list(const Digraph& g) {
  std::string out = std::to_string(g.size()) + "\n";
  for (Node v = 0; v < g.size(); ++v)
    for (Node w : g.out(v)) out += std::to_string(v + 1) + " " + std::to_string(w + 1) + "\n";
  return out;
}

inline nlohmann::ordered_json graph_to_json(const Digraph& g) {
  nlohmann::ordered_json doc;
  doc["n"] = g.size();
  auto adj = nlohmann::ordered_json::array();
  for (Node v = 0; v < g.size(); ++v) {
    auto row = nlohmann::ordered_json::array();
    for (Node w : g.out(v)) row.push_back(w + 1);
    adj.push_back(std::move(row));
  }
  doc["adj"] = std::move(adj);
  return doc;
}

inline std::string render_json(const Digraph& g) { return graph_to_json(g).dump() + "\n"; }

}  // namespace graphic_sums

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphic_sums {

/// Node index. The library API is 0-based; text formats and reports use
/// 1-based labels.
using Node = std::size_t;

class graph_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Finite simple digraph stored as sorted, duplicate-free out-neighbor lists.
/// Loops are allowed. Immutable after construction.
class Digraph {
 public:
  Digraph() = default;

  /// Builds a digraph from 0-based adjacency lists. Lists are sorted and
  /// deduplicated; out-of-range targets throw graph_error.
  explicit Digraph(std::vector<std::vector<Node>> out_adj) : out_(std::move(out_adj)) {
    if (out_.empty()) throw graph_error("digraph must have at least one node");
    const Node n = out_.size();
    for (auto& list : out_) {
      for (Node w : list)
        if (w >= n) throw graph_error("neighbor " + std::to_string(w + 1) + " out of range 1.." + std::to_string(n));
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
    }
  }

  /// Adjacency given with 1-based labels, e.g. {{2}, {3, 4}, {2, 4}, {1}}.
  static Digraph from_one_based(std::initializer_list<std::initializer_list<Node>> adj) {
    std::vector<std::vector<Node>> out;
    out.reserve(adj.size());
    for (const auto& row : adj) {
      std::vector<Node> list;
      for (Node w : row) {
        if (w == 0) throw graph_error("node labels are 1-based");
        list.push_back(w - 1);
      }
      out.push_back(std::move(list));
    }
    return Digraph(std::move(out));
  }

  [[nodiscard]] std::size_t size() const noexcept { return out_.size(); }
  [[nodiscard]] std::span<const Node> out(Node v) const { return out_.at(v); }
  [[nodiscard]] std::size_t out_degree(Node v) const { return out_.at(v).size(); }
  [[nodiscard]] const std::vector<std::vector<Node>>& adjacency() const noexcept { return out_; }

  [[nodiscard]] bool has_arc(Node from, Node to) const {
    const auto& list = out_.at(from);
    return std::binary_search(list.begin(), list.end(), to);
  }

  [[nodiscard]] std::size_t arc_count() const noexcept {
    std::size_t total = 0;
    for (const auto& list : out_) total += list.size();
    return total;
  }

  [[nodiscard]] std::size_t min_out_degree() const noexcept {
    std::size_t best = out_.empty() ? 0 : out_.front().size();
    for (const auto& list : out_) best = std::min(best, list.size());
    return best;
  }

  [[nodiscard]] std::vector<std::size_t> in_degrees() const {
    std::vector<std::size_t> in(size(), 0);
    for (const auto& list : out_)
      for (Node w : list) ++in[w];
    return in;
  }

  [[nodiscard]] Digraph reversed() const {
    std::vector<std::vector<Node>> rev(size());
    for (Node v = 0; v < size(); ++v)
      for (Node w : out_[v]) rev[w].push_back(v);
    return Digraph(std::move(rev));
  }

  /// Induced subgraph on `nodes` (sorted ascending); node i of the result is
  /// nodes[i].
  [[nodiscard]] Digraph induced(std::span<const Node> nodes) const {
    std::vector<std::ptrdiff_t> local(size(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) local[nodes[i]] = static_cast<std::ptrdiff_t>(i);
    std::vector<std::vector<Node>> out(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      for (Node w : out_.at(nodes[i]))
        if (local[w] >= 0) out[i].push_back(static_cast<Node>(local[w]));
    return Digraph(std::move(out));
  }

  friend bool operator==(const Digraph&, const Digraph&) = default;

 private:
  std::vector<std::vector<Node>> out_;
};

/// Throws unless every node has an out-neighbor; the graphic sums used here
/// are only defined over such graphs.
inline void require_positive_out_degree(const Digraph& g) {
  for (Node v = 0; v < g.size(); ++v)
    if (g.out_degree(v) == 0)
      throw graph_error("node " + std::to_string(v + 1) + " has out-degree 0");
}

/// One strictly positive, finite value per node.
class NodeVector {
 public:
  NodeVector() = default;
  explicit NodeVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (!(std::isfinite(values_[i]) && values_[i] > 0.0))
        throw graph_error("entry " + std::to_string(i + 1) + " must be finite and positive");
  }
  NodeVector(std::initializer_list<double> values) : NodeVector(std::vector<double>(values)) {}

  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](Node v) const { return values_[v]; }
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }

  [[nodiscard]] NodeVector scaled(double factor) const {
    std::vector<double> out(values_);
    for (double& x : out) x *= factor;
    return NodeVector(std::move(out));
  }

 private:
  std::vector<double> values_;
};

}  // namespace graphic_sums

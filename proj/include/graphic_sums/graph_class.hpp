#pragma once

#include <algorithm>

#include "graphic_sums/connectivity.hpp"
#include "graphic_sums/digraph.hpp"

namespace graphic_sums {

struct GraphClassFlags {
  bool min_outdegree_positive = false;
  bool min_indegree_positive = false;
  bool strongly_connected = false;
  bool is_functional = false;
  bool has_loop = false;

  friend bool operator==(const GraphClassFlags&, const GraphClassFlags&) = default;
};

inline GraphClassFlags classify(const Digraph& g) {
  GraphClassFlags f;
  f.min_outdegree_positive = g.min_out_degree() > 0;
  const auto in = g.in_degrees();
  f.min_indegree_positive = std::all_of(in.begin(), in.end(), [](std::size_t d) { return d > 0; });
  f.strongly_connected = is_strongly_connected(g);
  f.is_functional = true;
  for (Node v = 0; v < g.size(); ++v) {
    if (g.out_degree(v) != 1) f.is_functional = false;
    if (g.has_arc(v, v)) f.has_loop = true;
  }
  return f;
}

}  // namespace graphic_sums

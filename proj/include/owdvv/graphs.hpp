#pragma once

#include <vector>

#include "owdvv/fan.hpp"

namespace owdvv {

struct GraphEdge {
  int va = 0, vb = 0;  // vertex indices
  int curve = 0;       // index into LocTarget::curves
  int degree = 1;
};

/// Fixed-locus label: a tree with fixed-point vertices, multiply covered
/// invariant-curve edges and labeled marked points on vertices.
struct DecoratedGraph {
  std::vector<int> vertex_point;
  std::vector<GraphEdge> edges;
  std::vector<int> mark_vertex;
  long aut = 1;

  int total_class_component(const LocTarget& t, int slot) const {
    int sum = 0;
    for (const GraphEdge& e : edges) sum += e.degree * t.curves[e.curve].cls[slot];
    return sum;
  }
};

/// All decorated graphs for the class and marked-point count, up to
/// isomorphism, each with |Aut| recorded. Throws std::invalid_argument if the
/// class is not a nonnegative combination of compact-curve classes, or if
/// class 0 comes with n < 3.
std::vector<DecoratedGraph> enumerate_graphs(const LocTarget& target, const std::vector<int>& cls,
                                             int n);

}  // namespace owdvv

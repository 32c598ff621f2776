#include "owdvv/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace owdvv {

namespace {

using EdgeSpec = std::pair<int, int>;  // (curve index, degree)

void edge_multisets_rec(const LocTarget& t, std::vector<int>& remaining, EdgeSpec min_edge,
                        std::vector<EdgeSpec>& current, std::vector<std::vector<EdgeSpec>>& out) {
  bool done = std::all_of(remaining.begin(), remaining.end(), [](int x) { return x == 0; });
  if (done) {
    out.push_back(current);
    return;
  }
  for (int c = min_edge.first; c < (int)t.curves.size(); ++c) {
    if (t.curves[c].cls == std::vector<int>(t.curves[c].cls.size(), 0))
      throw std::logic_error("enumerate_graphs: curve with zero class");
    int dmin = (c == min_edge.first) ? min_edge.second : 1;
    for (int d = dmin;; ++d) {
      bool fits = true;
      for (int s = 0; s < (int)remaining.size(); ++s)
        if (d * t.curves[c].cls[s] > remaining[s]) fits = false;
      if (!fits) break;
      for (int s = 0; s < (int)remaining.size(); ++s) remaining[s] -= d * t.curves[c].cls[s];
      current.emplace_back(c, d);
      edge_multisets_rec(t, remaining, {c, d}, current, out);
      current.pop_back();
      for (int s = 0; s < (int)remaining.size(); ++s) remaining[s] += d * t.curves[c].cls[s];
    }
  }
}

/// Canonical encoding of a decorated graph under a vertex relabeling.
std::vector<long> encode(const DecoratedGraph& g, const std::vector<int>& perm) {
  std::vector<long> code;
  int nv = (int)g.vertex_point.size();
  std::vector<int> point(nv);
  for (int v = 0; v < nv; ++v) point[perm[v]] = g.vertex_point[v];
  for (int v = 0; v < nv; ++v) code.push_back(point[v]);
  std::vector<std::array<long, 4>> edges;
  for (const GraphEdge& e : g.edges) {
    long a = perm[e.va], b = perm[e.vb];
    if (a > b) std::swap(a, b);
    edges.push_back({a, b, (long)e.curve, (long)e.degree});
  }
  std::sort(edges.begin(), edges.end());
  for (const auto& e : edges)
    for (long x : e) code.push_back(x);
  for (int mv : g.mark_vertex) code.push_back(perm[mv]);
  return code;
}

/// Canonical form over vertex relabelings; also counts |Aut|. Isomorphisms
/// preserve the fixed-point decoration, so only permutations within groups of
/// equal-point vertices need to be searched.
std::pair<std::vector<long>, long> canonical_form(const DecoratedGraph& g) {
  int nv = (int)g.vertex_point.size();
  std::map<int, std::vector<int>> groups;
  for (int v = 0; v < nv; ++v) groups[g.vertex_point[v]].push_back(v);

  // vertices of each point map into one block of a point-sorted slot layout,
  // so isomorphic graphs land on the same arrangement
  std::vector<std::vector<int>> group_members;
  std::vector<int> group_offset;
  int offset = 0;
  for (const auto& [point, members] : groups) {
    group_members.push_back(members);
    group_offset.push_back(offset);
    offset += (int)members.size();
  }

  std::vector<int> perm(nv);
  std::vector<long> first_code;
  std::vector<long> best;
  long aut = 0;
  std::function<void(size_t)> walk = [&](size_t gi) {
    if (gi == group_members.size()) {
      std::vector<long> code = encode(g, perm);
      if (first_code.empty()) first_code = code;
      if (best.empty() || code < best) best = code;
      if (code == first_code) ++aut;
      return;
    }
    const std::vector<int>& members = group_members[gi];
    std::vector<int> order(members.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = (int)i;
    do {
      for (size_t i = 0; i < members.size(); ++i)
        perm[members[i]] = group_offset[gi] + order[i];
      walk(gi + 1);
    } while (std::next_permutation(order.begin(), order.end()));
  };
  walk(0);
  return {best, aut};
}

void build_trees(const LocTarget& t, const std::vector<EdgeSpec>& multiset,
                 std::vector<DecoratedGraph>& out) {
  int k = (int)multiset.size();
  std::set<std::vector<long>> seen;

  struct State {
    DecoratedGraph g;
    std::vector<bool> used;
  };

  // the first edge seeds the tree; remaining edges attach one at a time
  std::vector<State> stack;
  {
    State s;
    s.used.assign(k, false);
    const TargetCurve& c0 = t.curves[multiset[0].first];
    s.g.vertex_point = {c0.point_a, c0.point_b};
    s.g.edges.push_back({0, 1, multiset[0].first, multiset[0].second});
    s.used[0] = true;
    stack.push_back(std::move(s));
  }

  while (!stack.empty()) {
    State s = std::move(stack.back());
    stack.pop_back();
    if ((int)s.g.edges.size() == k) {
      auto [code, aut] = canonical_form(s.g);
      if (seen.insert(code).second) {
        s.g.aut = aut;
        out.push_back(std::move(s.g));
      }
      continue;
    }
    for (int i = 1; i < k; ++i) {
      if (s.used[i]) continue;
      if (i > 1 && multiset[i] == multiset[i - 1] && !s.used[i - 1]) continue;  // multiset prune
      const TargetCurve& c = t.curves[multiset[i].first];
      for (int v = 0; v < (int)s.g.vertex_point.size(); ++v) {
        for (int side = 0; side < 2; ++side) {
          int here = side == 0 ? c.point_a : c.point_b;
          int there = side == 0 ? c.point_b : c.point_a;
          if (s.g.vertex_point[v] != here) continue;
          State next = s;
          next.g.vertex_point.push_back(there);
          next.g.edges.push_back(
              {v, (int)next.g.vertex_point.size() - 1, multiset[i].first, multiset[i].second});
          next.used[i] = true;
          stack.push_back(std::move(next));
        }
      }
    }
  }
}

}  // namespace

std::vector<DecoratedGraph> enumerate_graphs(const LocTarget& target, const std::vector<int>& cls,
                                             int n) {
  if ((int)cls.size() != target.class_dim)
    throw std::invalid_argument("enumerate_graphs: class dimension mismatch");
  bool zero_class = std::all_of(cls.begin(), cls.end(), [](int x) { return x == 0; });
  if (zero_class && n < 3)
    throw std::invalid_argument("enumerate_graphs: class 0 needs at least 3 marked points");

  std::vector<DecoratedGraph> graphs;
  if (zero_class) {
    for (int p = 0; p < target.num_points; ++p) {
      DecoratedGraph g;
      g.vertex_point = {p};
      g.mark_vertex.assign(n, 0);
      g.aut = 1;
      graphs.push_back(std::move(g));
    }
    return graphs;
  }

  std::vector<std::vector<EdgeSpec>> multisets;
  {
    std::vector<int> remaining = cls;
    std::vector<EdgeSpec> current;
    edge_multisets_rec(target, remaining, {0, 1}, current, multisets);
  }
  if (multisets.empty())
    throw std::invalid_argument(
        "enumerate_graphs: class is not a nonnegative sum of compact-curve classes");

  std::vector<DecoratedGraph> trees;
  for (const auto& ms : multisets) build_trees(target, ms, trees);

  // distribute the labeled marks, dedupe isomorphic assignments
  std::set<std::vector<long>> seen;
  for (const DecoratedGraph& tree : trees) {
    int nv = (int)tree.vertex_point.size();
    std::vector<int> marks(n, 0);
    for (;;) {
      DecoratedGraph g = tree;
      g.mark_vertex = marks;
      auto [code, aut] = canonical_form(g);
      if (seen.insert(code).second) {
        g.aut = aut;
        graphs.push_back(std::move(g));
      }
      int i = n - 1;
      while (i >= 0 && marks[i] == nv - 1) marks[i--] = 0;
      if (i < 0) break;
      ++marks[i];
    }
  }
  return graphs;
}

}  // namespace owdvv

#include "owdvv/localize.hpp"

#include <algorithm>
#include <stdexcept>

namespace owdvv {

namespace {

/// Factor of one degree-d edge: the moving part of H^0/H^1 of the pulled-back
/// tangent and normal bundles of the curve.
RationalFn edge_factor(const LocTarget& target, int curve, int d) {
  const TargetCurve& c = target.curves[curve];
  const RationalFn& w = c.end_a.tangent;
  RationalFn dr{Rational(d)};
  RationalFn denom(Rational(1));
  for (int k = -d; k <= d; ++k) {
    if (k == 0) continue;
    denom = denom * (w * RationalFn(Rational(k)) / dr);
  }
  RationalFn num(Rational(1));
  for (const auto& [wj, a] : c.end_a.normals) {
    int ad = a * d;
    if (ad >= 0) {
      for (int k = 0; k <= ad; ++k) {
        RationalFn weight = wj - w * RationalFn(Rational(k)) / dr;
        if (weight.is_zero())
          throw std::runtime_error("localization: vanishing normal weight on curve " +
                                   std::to_string(curve) + " (weight " + wj.to_string() +
                                   " - " + std::to_string(k) + "/" + std::to_string(d) + " * " +
                                   w.to_string() + ")");
        denom = denom * weight;
      }
    } else if (ad <= -2) {
      for (int k = ad + 1; k <= -1; ++k) num = num * (wj - w * RationalFn(Rational(k)) / dr);
    }
  }
  return num / denom;
}

struct VertexFlags {
  std::vector<RationalFn> weights;  // source-curve tangent weights w_F / d_e
  int marks = 0;
};

RationalFn vertex_factor(const LocTarget& target, int point, const VertexFlags& vf) {
  int flags = (int)vf.weights.size();
  int n_v = flags + vf.marks;
  RationalFn psi(Rational(1));
  RationalFn sum_inv;
  for (const RationalFn& w : vf.weights) {
    if (w.is_zero()) throw std::runtime_error("localization: vanishing flag weight");
    psi = psi * w.inverse();
    sum_inv += w.inverse();
  }
  int e = n_v - 3;
  if (e != 0) {
    if (sum_inv.is_zero()) {
      if (e > 0)
        psi = RationalFn();
      else
        throw std::runtime_error(
            "localization: vanishing weight sum at an unstable vertex (non-generic weights)");
    } else {
      psi = psi * sum_inv.pow(e);
    }
  }
  return target.euler[point].pow(flags - 1) * psi;
}

}  // namespace

RationalFn insertion_restriction(const LocTarget& target, const Insertion& ins, int point) {
  switch (ins.kind) {
    case Insertion::Kind::Idempotent:
      return point == ins.index ? RationalFn(Rational(1)) : RationalFn();
    case Insertion::Kind::DivisorTildeD:
      if (target.special_point < 0)
        throw std::invalid_argument("divisor insertion only exists on the 4-fold");
      return point == target.special_point ? -RationalFn::variable(U1) : RationalFn();
  }
  throw std::logic_error("insertion_restriction: bad kind");
}

namespace {

/// Contribution of the fixed locus with the insertion restrictions left out.
RationalFn bare_contribution(const LocTarget& target, const DecoratedGraph& g) {
  RationalFn value(Rational(1));
  long sym = g.aut;
  for (const GraphEdge& e : g.edges) sym *= e.degree;
  value = value / RationalFn(Rational(sym));

  std::vector<VertexFlags> vf(g.vertex_point.size());
  for (const GraphEdge& e : g.edges) {
    value = value * edge_factor(target, e.curve, e.degree);
    const TargetCurve& c = target.curves[e.curve];
    RationalFn dr{Rational(e.degree)};
    for (int side = 0; side < 2; ++side) {
      int v = side == 0 ? e.va : e.vb;
      const CurveEnd& end = g.vertex_point[v] == c.point_a ? c.end_a : c.end_b;
      vf[v].weights.push_back(end.tangent / dr);
    }
  }
  for (int mv : g.mark_vertex) ++vf[mv].marks;
  for (int v = 0; v < (int)g.vertex_point.size(); ++v)
    value = value * vertex_factor(target, g.vertex_point[v], vf[v]);
  return value;
}

}  // namespace

RationalFn graph_contribution(const LocTarget& target, const DecoratedGraph& g,
                              const std::vector<Insertion>& insertions) {
  if (insertions.size() != g.mark_vertex.size())
    throw std::invalid_argument("graph_contribution: insertion count != marking count");
  RationalFn value(Rational(1));
  for (size_t m = 0; m < insertions.size(); ++m) {
    value = value * insertion_restriction(target, insertions[m], g.vertex_point[g.mark_vertex[m]]);
    if (value.is_zero()) return value;
  }
  return value * bare_contribution(target, g);
}

RationalFn gw_invariant(const LocTarget& target, const std::vector<int>& cls,
                        const std::vector<Insertion>& insertions) {
  RationalFn total;
  for (const DecoratedGraph& g : enumerate_graphs(target, cls, (int)insertions.size()))
    total += graph_contribution(target, g, insertions);
  assert_u3_free(total, "gw_invariant");
  return total;
}

std::map<std::vector<int>, RationalFn> invariants_by_pattern(const LocTarget& target,
                                                             const std::vector<int>& cls, int n) {
  std::map<std::vector<int>, RationalFn> acc;
  for (const DecoratedGraph& g : enumerate_graphs(target, cls, n)) {
    std::vector<int> pattern;
    pattern.reserve(n);
    for (int mv : g.mark_vertex) pattern.push_back(g.vertex_point[mv]);
    if (!std::is_sorted(pattern.begin(), pattern.end())) continue;
    acc[pattern] += bare_contribution(target, g);
  }
  return acc;
}

}  // namespace owdvv

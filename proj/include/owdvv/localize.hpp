#pragma once

#include <map>
#include <vector>

#include "owdvv/graphs.hpp"

namespace owdvv {

struct Insertion {
  enum class Kind { Idempotent, DivisorTildeD };
  Kind kind = Kind::Idempotent;
  int index = 0;  // fixed point index for Idempotent

  static Insertion idempotent(int i) { return {Kind::Idempotent, i}; }
  static Insertion divisor() { return {Kind::DivisorTildeD, -1}; }
};

/// Restriction of the insertion class at a fixed point. Idempotent classes
/// restrict to Kronecker deltas; the divisor class D~ restricts to -u1 at
/// p~_{m+1} and 0 elsewhere.
RationalFn insertion_restriction(const LocTarget& target, const Insertion& ins, int point);

/// Exact fixed-locus contribution C_Gamma including the insertion
/// restrictions at the markings.
RationalFn graph_contribution(const LocTarget& target, const DecoratedGraph& g,
                              const std::vector<Insertion>& insertions);

/// Genus-zero equivariant invariant: sum of graph contributions.
RationalFn gw_invariant(const LocTarget& target, const std::vector<int>& cls,
                        const std::vector<Insertion>& insertions);

/// All idempotent-insertion invariants for a class and point count, keyed by
/// the tuple of inserted fixed-point indices in weakly increasing order.
std::map<std::vector<int>, RationalFn> invariants_by_pattern(const LocTarget& target,
                                                             const std::vector<int>& cls, int n);

}  // namespace owdvv

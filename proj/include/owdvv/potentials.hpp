#pragma once

#include <iosfwd>

#include "owdvv/localize.hpp"
#include "owdvv/series.hpp"

namespace owdvv {

/// True iff the class is a nonnegative integer combination of the target's
/// compact-curve classes.
bool class_effective(const LocTarget& target, const std::vector<int>& cls);

/// All effective classes with coordinates within the caps; the zero class
/// comes first. If require_d_zero, only classes with vanishing d-slot.
std::vector<std::vector<int>> effective_classes(const LocTarget& target, const Caps& caps,
                                                bool require_d_zero);

/// Genus-zero equivariant potential of the 3-fold: the coefficient of
/// Q^beta t^alpha is <phi^alpha> / alpha!. Coefficients live in Q(u1,u2).
RfSeries build_F0_3fold(const LocTarget& x3, const Caps& caps);

/// Potential of the 4-fold. The t^{m+1}-dependence is exponential through the
/// d-slot of the class except for the isolated cubic term, which is kept
/// separately.
struct TildePotential {
  RfSeries main;
  RationalFn cubic;  // coefficient of (t^{m+1})^3
  int m = 0;

  /// Third derivative; indices 0..m-1 are t^1..t^m, index m is t^{m+1}.
  RfSeries third_derivative(int i, int j, int k) const;
};

TildePotential build_F0_4fold(const LocTarget& x4, const Caps& caps);

/// The pole decomposition of F0 of the 4-fold minus its cubic term:
///   u4^{-1} A + v^{-1} B + u4 v^{-1} C1 + C2,
/// coefficients written in framing coordinates (u1, v, u4).
struct ExpansionPieces {
  RfSeries A, B, C1, C2;
  int framing = 0;
};

/// Canonical extraction: u4-residue first, then v-residue, then the split of
/// the v-residue into its u4-constant and u4-multiple parts. Throws
/// PoleStructureViolation naming the offending key if a coefficient has a
/// u4- or v-pole of order > 1 or a mixed u4*v pole.
ExpansionPieces extract_pieces(const TildePotential& F4, int framing);

/// A restricted to u4 = 0 and written back in (u1, u2): equals the 3-fold
/// potential by the correspondence. Checked to be supported on d = 0.
RfSeries extract_closed(const ExpansionPieces& pieces);

/// B restricted to u4 = 0, v = 0: the antiderivative of the disk potential,
/// supported on d >= 1 with coefficients in Q(u1).
RfSeries extract_disk(const ExpansionPieces& pieces);

// Derivatives in the exponential directions. For a class (beta, d):
// d/dt^o multiplies by d, d/dt^{m+1} multiplies by -d/u1.
RfSeries d_open(const RfSeries& s);
DualSeries d_open(const DualSeries& s);
RfSeries d_tm1(const RfSeries& s);

/// Inverse of d_open on d >= 1 support; throws std::domain_error if the
/// series has d = 0 support.
RfSeries integrate_open(const RfSeries& s);

/// Freeze the exponential open factors to 1, i.e. take t^o = 0. This is the
/// identity on coefficients; it exists to mark intent at call sites.
inline RfSeries at_open_origin(const RfSeries& s) { return s; }

/// Reassembled coefficient u4^{-1}A + v^{-1}B + u4 v^{-1}C1 + C2 at one key,
/// in framing coordinates.
RationalFn reassemble_coefficient(const ExpansionPieces& pieces, const SeriesKey& key);

// Structured-text export/import of a series (one row per coefficient).
// Pieces of the pole decomposition print with the framing names (u1, v, u4).
std::string series_to_text(const RfSeries& s, const std::string& regime,
                           const std::array<std::string, kNumVars>& names =
                               Poly::default_var_names());
RfSeries series_from_text(const std::string& text, std::string* regime_out = nullptr,
                          const std::array<std::string, kNumVars>& names =
                              Poly::default_var_names());

/// Invariant table rows: (target, class coords, n, insertion pattern, value).
std::string invariant_table(const LocTarget& target, const std::string& target_name,
                            const Caps& caps);

}  // namespace owdvv

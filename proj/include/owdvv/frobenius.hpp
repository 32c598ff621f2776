#pragma once

#include "owdvv/potentials.hpp"

namespace owdvv {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::vector<std::string> details;

  CheckResult() = default;
  explicit CheckResult(std::string n) : name(std::move(n)) {}

  void fail(const std::string& what) {
    pass = false;
    details.push_back(what);
  }
  void note(const std::string& what) { details.push_back(what); }
};

/// Diagonal pairing on the index set {1..m, o}: h_ii = 1/Delta^i restricted
/// to u2 = f*u1 for i <= m, h_oo = 1, off-diagonal zero.
struct PairingMatrix {
  int m = 0;
  std::vector<RationalFn> diag;      // size m+1, last entry is h_oo = 1
  std::vector<RationalFn> inv_diag;  // inverse entries

  const RationalFn& h(int i) const { return diag[i]; }
  const RationalFn& h_inv(int i) const { return inv_diag[i]; }
};

/// Throws DenominatorVanishes naming the fixed point if the framing is not
/// generic for the geometry.
PairingMatrix build_pairing(const LocTarget& x3, int framing);

/// Restrict every coefficient to u2 = f*u1; DenominatorVanishes reports the
/// offending key.
RfSeries restrict_series(const RfSeries& s, int framing);

/// Dual-number potential F = -(u1/6)(t^o)^3 + F0X|_{u2=fu1} + eps * intF01.
/// The t^o-dependence is the explicit cubic plus exponential factors carried
/// by the d-slot.
struct FrobPotential {
  int m = 0;
  DualSeries main;

  /// Indices 0..m-1 are t^1..t^m, index m is t^o.
  DualSeries third_derivative(int i, int j, int k) const;
};

FrobPotential frob_potential(const RfSeries& FX_restricted, const RfSeries& intF01);

// --- WDVV verifiers (report-valued; exact residuals) ---

/// WDVV for the 3-fold with the unrestricted pairing g^{nu nu} = Delta^nu.
CheckResult verify_wdvv_x(const RfSeries& F0X, const std::vector<RationalFn>& euler);

/// WDVV for the 4-fold, indices 1..m+1, pairing g~^{nu nu} = Delta~^nu.
CheckResult verify_wdvv_4fold(const TildePotential& F4, const std::vector<RationalFn>& euler4);

/// Dual-number WDVV for the potential of the open Frobenius structure.
CheckResult verify_wdvv_h1(const FrobPotential& F, const PairingMatrix& h);

/// The seven coefficient identities extracted from the 4-fold WDVV equation.
/// Identity (Ic) uses the unrestricted potential and pairing; all others use
/// the restriction to u2 = f*u1 and the antiderivative disk potential.
std::vector<CheckResult> verify_identity_collection(const RfSeries& F0X_unrestricted,
                                                    const std::vector<RationalFn>& euler,
                                                    const RfSeries& FX_restricted,
                                                    const RfSeries& intF01,
                                                    const PairingMatrix& h);

// --- products and structures ---

template <class C>
struct StructureConstants {
  int m = 0;  // tangent directions are 0..m (index m is the open one)
  std::vector<Series<C>> table;  // [ (i*(m+1)+j)*(m+1)+k ]

  const Series<C>& at(int i, int j, int k) const { return table[(i * (m + 1) + j) * (m + 1) + k]; }
};

StructureConstants<DualScalar> structure_constants(const FrobPotential& F,
                                                   const PairingMatrix& h);

/// Vector potential of the flat F-manifold: F^i = h^{ii} d_i (FX + intF01|_{t^o=0})
/// for i <= m and F^o = F01|_{t^o = 0}; every component t^o-independent.
struct VectorPotential {
  int m = 0;
  std::vector<RfSeries> comp;  // size m+1
};

VectorPotential vector_potential(const RfSeries& FX_restricted, const RfSeries& intF01,
                                 const PairingMatrix& h);

StructureConstants<RationalFn> structure_constants(const VectorPotential& V);

template <class C>
CheckResult verify_associativity(const StructureConstants<C>& sc, const std::string& name);

/// Approximate idempotent basis, correct modulo I^order where I is generated
/// by the Novikov variables.
struct IdempotentBasis {
  int order = 1;
  int m = 0;
  // xi[a] = coordinates of the a-th idempotent in the frame (d_1..d_m, d_o)
  std::vector<std::vector<DualSeries>> xi;
};

/// Order-by-order linear lift from the classical seed xi_i = d_i,
/// xi_o = -u1^{-1} d_o.
IdempotentBasis idempotent_lift(const StructureConstants<DualScalar>& sc, int order);

/// Orthogonality/idempotency residuals mod I^order, plus the unit report.
CheckResult verify_idempotents(const StructureConstants<DualScalar>& sc,
                               const IdempotentBasis& basis);

/// Nilpotency of the open direction and infeasibility of a unit field for the
/// F-manifold product, checked at every truncation order up to max_order.
CheckResult nilpotent_no_unit_report(const StructureConstants<RationalFn>& sc, int max_order);

/// The quotient by span(d_o) reproduces the corrected Frobenius structure
/// constants h^{kk} d_i d_j d_k (FX + intF01|_{t^o=0}).
CheckResult verify_fmanifold_extension(const StructureConstants<RationalFn>& sc,
                                       const RfSeries& FX_restricted, const RfSeries& intF01,
                                       const PairingMatrix& h);

}  // namespace owdvv

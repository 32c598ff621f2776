#include "owdvv/frobenius.hpp"

#include <algorithm>
#include <sstream>

namespace owdvv {

namespace {

constexpr int kMaxListedResiduals = 4;

template <class C>
void require_zero(CheckResult& res, const Series<C>& s, const std::string& context) {
  int listed = 0;
  for (const auto& [k, v] : s.coefficients()) {
    if (v.is_zero()) continue;
    if (listed < kMaxListedResiduals)
      res.fail(context + " residual at " + k.to_string() + " = " + v.to_string());
    else if (listed == kMaxListedResiduals)
      res.fail(context + " (further residuals suppressed)");
    ++listed;
  }
}

std::string idx_name(int i, int m) { return i < m ? "t" + std::to_string(i + 1) : "o"; }

}  // namespace

PairingMatrix build_pairing(const LocTarget& x3, int framing) {
  PairingMatrix h;
  h.m = x3.num_points;
  Poly image = Poly::variable(U1).scaled(Rational(framing));
  for (int i = 0; i < h.m; ++i) {
    RationalFn delta = x3.euler[i].substitute({{U2, image}});
    if (delta.is_zero())
      throw DenominatorVanishes("framing " + std::to_string(framing) +
                                " is not generic: Delta^" + std::to_string(i + 1) +
                                " vanishes under u2 = f*u1");
    h.diag.push_back(delta.inverse());
    h.inv_diag.push_back(delta);
  }
  h.diag.push_back(RationalFn(Rational(1)));
  h.inv_diag.push_back(RationalFn(Rational(1)));
  return h;
}

RfSeries restrict_series(const RfSeries& s, int framing) {
  RfSeries out = RfSeries::empty_like(s);
  Poly image = Poly::variable(U1).scaled(Rational(framing));
  for (const auto& [k, v] : s.coefficients()) {
    try {
      out.add(k, v.substitute({{U2, image}}));
    } catch (const DenominatorVanishes& e) {
      throw DenominatorVanishes("coefficient at " + k.to_string() + ": " + e.what());
    }
  }
  return out;
}

FrobPotential frob_potential(const RfSeries& FX_restricted, const RfSeries& intF01) {
  for (const auto& [k, v] : FX_restricted.coefficients())
    if (k.d() != 0)
      throw std::invalid_argument("frob_potential: closed part has d-support at " + k.to_string());
  for (const auto& [k, v] : intF01.coefficients())
    if (k.d() == 0)
      throw std::invalid_argument("frob_potential: disk part has d = 0 support at " +
                                  k.to_string());
  FrobPotential F;
  F.m = FX_restricted.m();
  F.main = as_real(FX_restricted) + as_eps(intF01);
  return F;
}

DualSeries FrobPotential::third_derivative(int i, int j, int k) const {
  DualSeries r = main;
  int open_count = 0;
  for (int idx : {i, j, k}) {
    if (idx < m)
      r = r.dt(idx);
    else
      ++open_count;
  }
  if (open_count > 0)
    r = r.scale_by_d(
        [&](int d) { return DualScalar(RationalFn(Rational(d)).pow(open_count)); });
  if (open_count == 3) {
    SeriesKey origin;
    origin.cls.assign(r.class_dim(), 0);
    origin.tdeg.assign(r.m(), 0);
    r.add(origin, DualScalar(-RationalFn::variable(U1)));
  }
  return r;
}

// ---------------------------------------------------------------------------
// WDVV templates

namespace {

/// Residual of sum_nu D(i,j,nu) g^{nu nu} D(nu,k,l) - sum_nu D(j,k,nu) g^{nu nu} D(nu,i,l)
/// for every index quadruple; D must be symmetric in its arguments.
template <class C, class Deriv>
CheckResult wdvv_check(const std::string& name, int count, const Deriv& D,
                       const std::vector<C>& pairing_inv) {
  CheckResult res(name);
  // cache third derivatives by sorted index triple
  std::map<std::array<int, 3>, Series<C>> cache;
  auto d3 = [&](int a, int b, int c) -> const Series<C>& {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, D(key[0], key[1], key[2])).first;
    return it->second;
  };
  for (int i = 0; i < count; ++i) {
    for (int k = i + 1; k < count; ++k) {  // residual is antisymmetric in i <-> k
      for (int j = 0; j < count; ++j) {
        for (int l = 0; l < count; ++l) {
          Series<C> residual;
          bool first = true;
          for (int nu = 0; nu < count; ++nu) {
            Series<C> lhs = (d3(i, j, nu) * d3(nu, k, l)).scaled(pairing_inv[nu]);
            Series<C> rhs = (d3(j, k, nu) * d3(nu, i, l)).scaled(pairing_inv[nu]);
            Series<C> term = lhs - rhs;
            residual = first ? term : residual + term;
            first = false;
          }
          require_zero(res, residual,
                       "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
        }
      }
    }
  }
  if (res.pass) res.note("all index quadruples have identically zero residuals");
  return res;
}

}  // namespace

CheckResult verify_wdvv_x(const RfSeries& F0X, const std::vector<RationalFn>& euler) {
  int m = F0X.m();
  auto D = [&](int a, int b, int c) { return F0X.dt(a).dt(b).dt(c); };
  return wdvv_check<RationalFn>("WDVV(X)", m, D, euler);
}

CheckResult verify_wdvv_4fold(const TildePotential& F4, const std::vector<RationalFn>& euler4) {
  auto D = [&](int a, int b, int c) { return F4.third_derivative(a, b, c); };
  return wdvv_check<RationalFn>("WDVV(X~)", F4.m + 1, D, euler4);
}

CheckResult verify_wdvv_h1(const FrobPotential& F, const PairingMatrix& h) {
  std::vector<DualScalar> pairing_inv;
  for (const RationalFn& v : h.inv_diag) pairing_inv.emplace_back(v);
  auto D = [&](int a, int b, int c) { return F.third_derivative(a, b, c); };
  return wdvv_check<DualScalar>("WDVV(H1)", F.m + 1, D, pairing_inv);
}

// ---------------------------------------------------------------------------
// Identity collection (Ia)-(IIIb)

std::vector<CheckResult> verify_identity_collection(const RfSeries& F0X_unrestricted,
                                                    const std::vector<RationalFn>& euler,
                                                    const RfSeries& FX_restricted,
                                                    const RfSeries& intF01,
                                                    const PairingMatrix& h) {
  const int m = FX_restricted.m();
  auto Dx = [&](int a, int b, int c) { return FX_restricted.dt(a).dt(b).dt(c); };
  auto Dg = [&](int a, int b, int c) { return intF01.dt(a).dt(b).dt(c); };
  auto Dg_o = [&](int a, int b) { return d_open(intF01.dt(a).dt(b)); };
  auto Dg_oo = [&](int a) { return d_open(d_open(intF01.dt(a))); };

  std::vector<CheckResult> out;

  {
    CheckResult res("(Ia)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = i + 1; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            RfSeries residual;
            for (int nu = 0; nu < m; ++nu) {
              RfSeries lhs =
                  (Dx(i, j, nu) * Dg(nu, k, l) + Dg(i, j, nu) * Dx(nu, k, l)).scaled(h.h_inv(nu));
              RfSeries rhs =
                  (Dx(j, k, nu) * Dg(nu, i, l) + Dg(j, k, nu) * Dx(nu, i, l)).scaled(h.h_inv(nu));
              residual = nu == 0 ? lhs - rhs : residual + (lhs - rhs);
            }
            require_zero(res, residual,
                         "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                             std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
          }
    out.push_back(std::move(res));
  }

  {
    CheckResult res("(Ib)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = i + 1; k < m; ++k)
          for (int l = 0; l < m; ++l) {
            RfSeries residual;
            for (int nu = 0; nu < m; ++nu) {
              RfSeries term =
                  (Dg(i, j, nu) * Dg(nu, k, l) - Dg(j, k, nu) * Dg(nu, i, l)).scaled(h.h_inv(nu));
              residual = nu == 0 ? term : residual + term;
            }
            require_zero(res, residual,
                         "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                             std::to_string(k + 1) + "," + std::to_string(l + 1) + ")");
          }
    out.push_back(std::move(res));
  }

  {
    // (Ic) is the WDVV equation for X with unrestricted weights
    CheckResult res = verify_wdvv_x(F0X_unrestricted, euler);
    res.name = "(Ic)";
    out.push_back(std::move(res));
  }

  {
    CheckResult res("(IIa)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = i + 1; k < m; ++k) {
          RfSeries residual;
          for (int nu = 0; nu < m; ++nu) {
            RfSeries term =
                (Dx(i, j, nu) * Dg_o(nu, k) - Dx(j, k, nu) * Dg_o(nu, i)).scaled(h.h_inv(nu));
            residual = nu == 0 ? term : residual + term;
          }
          require_zero(res, residual,
                       "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + ")");
        }
    out.push_back(std::move(res));
  }

  {
    CheckResult res("(IIb)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = i + 1; k < m; ++k) {
          RfSeries residual;
          for (int nu = 0; nu < m; ++nu) {
            RfSeries term =
                (Dg(i, j, nu) * Dg_o(nu, k) - Dg(j, k, nu) * Dg_o(nu, i)).scaled(h.h_inv(nu));
            residual = nu == 0 ? term : residual + term;
          }
          require_zero(res, residual,
                       "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
                           std::to_string(k + 1) + ")");
        }
    out.push_back(std::move(res));
  }

  {
    CheckResult res("(IIIa)");
    RationalFn u1 = RationalFn::variable(U1);
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        RfSeries residual = Dg_o(i, j).scaled(-u1);  // -u1 d_i d_j d_o intF01
        for (int nu = 0; nu < m; ++nu)
          residual = residual + (Dx(i, j, nu) * Dg_oo(nu)).scaled(h.h_inv(nu));
        require_zero(res, residual,
                     "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    out.push_back(std::move(res));
  }

  {
    CheckResult res("(IIIb)");
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        RfSeries residual;
        for (int nu = 0; nu < m; ++nu) {
          RfSeries term =
              (Dg(i, j, nu) * Dg_oo(nu) - Dg_o(j, nu) * Dg_o(nu, i)).scaled(h.h_inv(nu));
          residual = nu == 0 ? term : residual + term;
        }
        require_zero(res, residual,
                     "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
    out.push_back(std::move(res));
  }

  for (CheckResult& res : out)
    if (res.pass && res.details.empty()) res.note("identically zero at the truncation caps");
  return out;
}

// ---------------------------------------------------------------------------
// Structures

StructureConstants<DualScalar> structure_constants(const FrobPotential& F,
                                                   const PairingMatrix& h) {
  StructureConstants<DualScalar> sc;
  sc.m = F.m;
  int n = F.m + 1;
  sc.table.reserve(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        sc.table.push_back(F.third_derivative(i, j, k).scaled(DualScalar(h.h_inv(k))));
  return sc;
}

VectorPotential vector_potential(const RfSeries& FX_restricted, const RfSeries& intF01,
                                 const PairingMatrix& h) {
  VectorPotential V;
  V.m = FX_restricted.m();
  RfSeries closed_plus_disk = FX_restricted + at_open_origin(intF01);
  for (int i = 0; i < V.m; ++i) V.comp.push_back(closed_plus_disk.dt(i).scaled(h.h_inv(i)));
  V.comp.push_back(at_open_origin(d_open(intF01)));  // F^o = F01 at t^o = 0
  return V;
}

StructureConstants<RationalFn> structure_constants(const VectorPotential& V) {
  StructureConstants<RationalFn> sc;
  sc.m = V.m;
  int n = V.m + 1;
  sc.table.reserve(n * n * n);
  RfSeries zero = RfSeries::empty_like(V.comp[0]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // components are t^o-independent: any derivative in the open slot dies
        if (i == V.m || j == V.m)
          sc.table.push_back(zero);
        else
          sc.table.push_back(V.comp[k].dt(i).dt(j));
      }
  return sc;
}

template <class C>
CheckResult verify_associativity(const StructureConstants<C>& sc, const std::string& name) {
  CheckResult res(name);
  int n = sc.m + 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = i + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          Series<C> residual;
          bool first = true;
          for (int mu = 0; mu < n; ++mu) {
            Series<C> term = sc.at(i, j, mu) * sc.at(mu, k, l) - sc.at(j, k, mu) * sc.at(mu, i, l);
            residual = first ? term : residual + term;
            first = false;
          }
          require_zero(res, residual,
                       "(" + idx_name(i, sc.m) + "," + idx_name(j, sc.m) + "," +
                           idx_name(k, sc.m) + "," + idx_name(l, sc.m) + ")");
        }
  if (res.pass) res.note("product associative at the truncation caps");
  return res;
}

template CheckResult verify_associativity<RationalFn>(const StructureConstants<RationalFn>&,
                                                      const std::string&);
template CheckResult verify_associativity<DualScalar>(const StructureConstants<DualScalar>&,
                                                      const std::string&);

// ---------------------------------------------------------------------------
// Idempotents

namespace {

int class_degree(const SeriesKey& k) {
  int s = 0;
  for (int c : k.cls) s += c;
  return s;
}

/// (y * z)^c = sum_{a,b} y^a z^b c_{ab}^c
std::vector<DualSeries> star(const StructureConstants<DualScalar>& sc,
                             const std::vector<DualSeries>& y, const std::vector<DualSeries>& z) {
  int n = sc.m + 1;
  std::vector<DualSeries> out;
  for (int c = 0; c < n; ++c) {
    DualSeries acc = DualSeries::empty_like(sc.at(0, 0, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (y[a].is_zero() || z[b].is_zero()) continue;
        acc = acc + y[a] * z[b] * sc.at(a, b, c);
      }
    out.push_back(std::move(acc));
  }
  return out;
}

DualSeries slice_degree(const DualSeries& s, int deg) {
  DualSeries out = DualSeries::empty_like(s);
  for (const auto& [k, v] : s.coefficients())
    if (class_degree(k) == deg) out.add(k, v);
  return out;
}

DualSeries truncate_below(const DualSeries& s, int deg) {
  DualSeries out = DualSeries::empty_like(s);
  for (const auto& [k, v] : s.coefficients())
    if (class_degree(k) < deg) out.add(k, v);
  return out;
}

std::vector<DualSeries> constant_field(const StructureConstants<DualScalar>& sc,
                                       int component, const DualScalar& value) {
  int n = sc.m + 1;
  std::vector<DualSeries> out;
  SeriesKey origin;
  origin.cls.assign(sc.at(0, 0, 0).class_dim(), 0);
  origin.tdeg.assign(sc.at(0, 0, 0).m(), 0);
  for (int c = 0; c < n; ++c) {
    DualSeries s = DualSeries::empty_like(sc.at(0, 0, 0));
    if (c == component) s.add(origin, value);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

IdempotentBasis idempotent_lift(const StructureConstants<DualScalar>& sc, int order) {
  IdempotentBasis basis;
  basis.order = order;
  basis.m = sc.m;
  int n = sc.m + 1;
  RationalFn minus_u1_inv = -RationalFn::variable(U1).inverse();
  for (int a = 0; a < n; ++a) {
    // seed: xi_i = d_i for i <= m, xi_o = -u1^{-1} d_o
    std::vector<DualSeries> xi = constant_field(
        sc, a, a < sc.m ? DualScalar(RationalFn(Rational(1))) : DualScalar(minus_u1_inv));
    for (int deg = 1; deg < order; ++deg) {
      std::vector<DualSeries> sqr = star(sc, xi, xi);
      // linearized idempotency: the correction at I^deg satisfies
      // (2 xi_0 *_0 - 1) delta = -(xi*xi - xi)_deg, and the classical product
      // is diagonal with eigenvalue delta_{ab} on the coordinate frame
      for (int b = 0; b < n; ++b) {
        DualSeries r = slice_degree(sqr[b] - xi[b], deg);
        if (r.is_zero()) continue;
        DualSeries delta = b == a ? r.scaled(DualScalar(RationalFn(Rational(-1)))) : r;
        xi[b] = xi[b] + delta;
      }
    }
    basis.xi.push_back(std::move(xi));
  }
  return basis;
}

CheckResult verify_idempotents(const StructureConstants<DualScalar>& sc,
                               const IdempotentBasis& basis) {
  CheckResult res("idempotent basis mod I^" + std::to_string(basis.order));
  int n = sc.m + 1;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      std::vector<DualSeries> prod = star(sc, basis.xi[a], basis.xi[b]);
      for (int c = 0; c < n; ++c) {
        DualSeries expect =
            a == b ? basis.xi[a][c] : DualSeries::empty_like(basis.xi[a][c]);
        require_zero(res, truncate_below(prod[c] - expect, basis.order),
                     "xi_" + idx_name(a, sc.m) + " * xi_" + idx_name(b, sc.m) + " [" +
                         idx_name(c, sc.m) + "]");
      }
    }

  // completeness: the sum of the idempotents acts as the identity mod I^order
  std::vector<DualSeries> unit = basis.xi[0];
  for (int a = 1; a < n; ++a)
    for (int c = 0; c < n; ++c) unit[c] = unit[c] + basis.xi[a][c];
  for (int b = 0; b < n; ++b) {
    std::vector<DualSeries> prod = star(sc, unit, constant_field(sc, b, DualScalar(RationalFn(Rational(1)))));
    for (int c = 0; c < n; ++c) {
      DualSeries expect = constant_field(sc, b, DualScalar(RationalFn(Rational(1))))[c];
      require_zero(res, truncate_below(prod[c] - expect, basis.order),
                   "(sum_a xi_a) * d_" + idx_name(b, sc.m) + " [" + idx_name(c, sc.m) + "]");
    }
  }
  if (res.pass)
    res.note("orthogonal idempotents; their sum is a unit modulo I^" +
             std::to_string(basis.order));
  return res;
}

CheckResult nilpotent_no_unit_report(const StructureConstants<RationalFn>& sc, int max_order) {
  CheckResult res("F-manifold nilpotency and unit search");
  int n = sc.m + 1;
  // d_a * d_o = 0 for every a
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      require_zero(res, sc.at(a, sc.m, c),
                   "d_" + idx_name(a, sc.m) + " * d_o [" + idx_name(c, sc.m) + "]");
  if (res.pass) res.note("d_o * d_a = 0 for all a: the open direction is square-zero");

  // a unit e would need e * d_o = d_o, but the left side vanishes identically,
  // at every truncation order
  bool star_o_zero = true;
  for (int a = 0; a < n && star_o_zero; ++a)
    for (int c = 0; c < n && star_o_zero; ++c) star_o_zero = sc.at(a, sc.m, c).is_zero();
  if (star_o_zero) {
    for (int ord = 1; ord <= max_order; ++ord)
      res.note("order I^" + std::to_string(ord) +
               ": unit system infeasible (e * d_o = 0 != d_o for every candidate e)");
  } else {
    res.fail("unexpected nonzero product against d_o; unit infeasibility not established");
  }
  return res;
}

CheckResult verify_fmanifold_extension(const StructureConstants<RationalFn>& sc,
                                       const RfSeries& FX_restricted, const RfSeries& intF01,
                                       const PairingMatrix& h) {
  CheckResult res("F-manifold extension of the closed Frobenius structure");
  RfSeries corrected = FX_restricted + at_open_origin(intF01);
  for (int i = 0; i < sc.m; ++i)
    for (int j = 0; j < sc.m; ++j)
      for (int k = 0; k < sc.m; ++k) {
        RfSeries expect = corrected.dt(i).dt(j).dt(k).scaled(h.h_inv(k));
        require_zero(res, sc.at(i, j, k) - expect,
                     "quotient constant c_{" + std::to_string(i + 1) + "," +
                         std::to_string(j + 1) + "}^" + std::to_string(k + 1));
      }
  // span(d_o) is an ideal
  for (int a = 0; a < sc.m + 1; ++a)
    for (int k = 0; k < sc.m; ++k)
      require_zero(res, sc.at(a, sc.m, k),
                   "ideal leak c_{" + idx_name(a, sc.m) + ",o}^" + std::to_string(k + 1));
  if (res.pass)
    res.note("projection along d_o is an algebra homomorphism onto the corrected "
             "closed-sector algebra");
  return res;
}

}  // namespace owdvv

// Acceptance suite: one line per criterion, exact checks only.
// Exit status is the number of failed criteria.

#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "owdvv/pipeline.hpp"

using namespace owdvv;

namespace {

int failures = 0;

void criterion(int number, const std::string& label, bool pass, const std::string& note = "") {
  std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << number << ": " << label;
  if (!note.empty()) std::cout << " -- " << note;
  std::cout << std::endl;
  if (!pass) ++failures;
}

RationalFn rf(const std::string& s) { return RationalFn::parse(s); }

struct Geometry {
  Fan3 fan;
  Fan4 fan4;
  CurveClassLattice lat;
  LocTarget x3, x4;
};

Geometry make_geometry(const FanInput& in) {
  Geometry g;
  g.fan = normalize_fan(in);
  g.fan4 = build_4fold(g.fan);
  g.lat = curve_lattice(g.fan, g.fan4);
  g.x3 = make_target_3fold(g.fan, g.lat);
  g.x4 = make_target_4fold(g.fan4, g.lat);
  return g;
}

FanInput preset(const std::string& name, int f) {
  return name == "c3" ? preset_c3(f) : preset_conifold(f);
}

// --- criterion 1 -----------------------------------------------------------

bool tangent_weight_fixtures() {
  for (const std::string name : {"c3", "conifold"}) {
    for (int f : {-1, 0, 1, 2}) {
      Geometry g = make_geometry(preset(name, f));
      int R = g.fan.num_rays();
      std::string fs = "(" + std::to_string(f) + ")";
      if (tangent_weight(g.fan4, {1, 2, R + 1}, R) != rf("-u1")) return false;
      if (tangent_weight(g.fan4, {2, R, R + 1}, 1) != rf("-" + fs + "*u1+u2")) return false;
      if (tangent_weight(g.fan4, {1, R, R + 1}, 2) != rf(fs + "*u1-u2-u4")) return false;
      if (tangent_weight(g.fan4, {1, 2, R}, R + 1) != rf("u1+u4")) return false;
      for (const auto& cone : g.fan.cones3)
        if (tangent_weight(g.fan4, {cone[0], cone[1], cone[2]}, R + 1) != rf("u4")) return false;
    }
  }
  return true;
}

// --- criterion 2 -----------------------------------------------------------

bool classical_limits() {
  for (const std::string name : {"c3", "conifold"}) {
    for (int f : {0, 1}) {
      Geometry g = make_geometry(preset(name, f));
      std::vector<int> zero3(g.x3.class_dim, 0), zero4(g.x4.class_dim, 0);
      for (int i = 0; i < g.x3.num_points; ++i)
        for (int j = 0; j < g.x3.num_points; ++j)
          for (int k = 0; k < g.x3.num_points; ++k) {
            RationalFn v = gw_invariant(g.x3, zero3,
                                        {Insertion::idempotent(i), Insertion::idempotent(j),
                                         Insertion::idempotent(k)});
            RationalFn expect =
                (i == j && j == k) ? g.x3.euler[i].inverse() : RationalFn();
            if (v != expect) return false;
          }
      for (int i = 0; i < g.x4.num_points; ++i)
        for (int j = 0; j < g.x4.num_points; ++j)
          for (int k = 0; k < g.x4.num_points; ++k) {
            RationalFn v = gw_invariant(g.x4, zero4,
                                        {Insertion::idempotent(i), Insertion::idempotent(j),
                                         Insertion::idempotent(k)});
            RationalFn expect =
                (i == j && j == k) ? g.x4.euler[i].inverse() : RationalFn();
            if (v != expect) return false;
          }
      // the cubic coefficient of the 4-fold potential
      std::string fs = "(" + std::to_string(f) + ")";
      RationalFn delta = rf("(u2-" + fs + "*u1)*(u4+u2-" + fs + "*u1)*u1*(u1+u4)");
      if (g.x4.euler[g.x4.special_point] != delta) return false;
      Caps small;
      small.beta = 1;
      small.d = 1;
      TildePotential F4 = build_F0_4fold(g.x4, small);
      if (F4.cubic != (delta * RationalFn(Rational(6))).inverse()) return false;
    }
  }
  return true;
}

// --- criterion 3 -----------------------------------------------------------

bool dual_engine_oracle() {
  for (int f : {0, 1, -1}) {
    Geometry g = make_geometry(preset_conifold(f));
    for (int beta = 0; beta <= 2; ++beta) {
      for (int n = beta == 0 ? 3 : 0; n <= 3; ++n) {
        // all insertion patterns over the m fixed points, weakly increasing
        std::vector<std::vector<int>> patterns;
        std::function<void(std::vector<int>&, int)> gen = [&](std::vector<int>& cur, int lo) {
          if ((int)cur.size() == n) {
            patterns.push_back(cur);
            return;
          }
          for (int p = lo; p < g.x3.num_points; ++p) {
            cur.push_back(p);
            gen(cur, p);
            cur.pop_back();
          }
        };
        std::vector<int> cur;
        gen(cur, 0);
        for (const auto& pattern : patterns) {
          std::vector<Insertion> ins;
          for (int p : pattern) ins.push_back(Insertion::idempotent(p));
          RationalFn four = gw_invariant(g.x4, {beta, 0}, ins);
          RationalFn three = gw_invariant(g.x3, {beta, 0}, ins);
          RationalFn restricted = (four * RationalFn::variable(U4)).substitute({{U4, Poly()}});
          if (restricted != three) return false;
        }
      }
    }
  }
  return true;
}

// --- criterion 4 -----------------------------------------------------------

bool known_closed_values() {
  Geometry g = make_geometry(preset_conifold(0));
  if (gw_invariant(g.x3, {1, 0}, {}) != rf("1")) return false;
  if (gw_invariant(g.x3, {2, 0}, {}) != rf("1/8")) return false;
  // scratch graph values frozen before the build
  RationalFn expected_edge = rf("1/8*(u1-u2)^2/((u1+u2)^2)");
  RationalFn expected_chain = rf("1/4*u1*u2/((u1+u2)^2)");
  RationalFn sum;
  for (const auto& graph : enumerate_graphs(g.x3, {2, 0}, 0)) {
    RationalFn c = graph_contribution(g.x3, graph, {});
    if (graph.edges.size() == 1 && c != expected_edge) return false;
    if (graph.edges.size() == 2 && c != expected_chain) return false;
    sum += c;
  }
  return sum == rf("1/8");
}

// --- criterion 5 -----------------------------------------------------------

bool pole_structure(std::string& note) {
  for (const std::string name : {"c3", "conifold"}) {
    for (int f : {0, 1, -1}) {
      Geometry g = make_geometry(preset(name, f));
      Caps caps;
      TildePotential F4 = build_F0_4fold(g.x4, caps);
      for (const auto& [k, v] : F4.main.coefficients()) {
        if (v.pole_order(U4) > 1) return false;       // u4 (F - cubic) regular at u4 = 0
        if (k.d() > 0 && v.pole_order(U4) > 0) return false;  // residue supported on d = 0
      }
      bool full_ok = true;
      std::string where;
      try {
        ExpansionPieces p = extract_pieces(F4, f);
        for (const auto& [k, v] : F4.main.coefficients())
          if (reassemble_coefficient(p, k) != to_framing_coords(v, f)) return false;
      } catch (const PoleStructureViolation& e) {
        full_ok = false;
        where = e.what();
      }
      if (name == "conifold" && f == -1) {
        // the one insertion-level boundary: phi~_2-inserted winding-1
        // coefficients have no defined weight restriction at this framing
        if (full_ok || where.find("class (1,1)") == std::string::npos) return false;
        note = "full battery on 5/6 combos; conifold f=-1 stops at the documented "
               "undefined-restriction insertion (class (1,1))";
      } else if (!full_ok) {
        return false;
      }
    }
  }
  return true;
}

// --- shared heavy data -----------------------------------------------------

struct VerifyData {
  Geometry g;
  RfSeries F0X, FXr, intF01;
  TildePotential F4;
  PairingMatrix h;
};

VerifyData make_verify_data(const std::string& name, int f, const Caps& caps) {
  VerifyData d{make_geometry(preset(name, f)), {}, {}, {}, {}, {}};
  d.F0X = build_F0_3fold(d.g.x3, caps);
  d.F4 = build_F0_4fold(d.g.x4, caps);
  d.intF01 = extract_disk(extract_pieces(d.F4, f));
  d.FXr = restrict_series(d.F0X, f);
  d.h = build_pairing(d.g.x3, f);
  return d;
}

}  // namespace

int main() {
  Caps caps;  // (2,2), t-cap 1: the spec defaults

  criterion(1, "sigma0~ flag weights and w~(sigma, iota(sigma)) = u4", tangent_weight_fixtures());
  criterion(2, "classical triple products and the (t^{m+1})^3 cubic", classical_limits());
  criterion(3, "dual-engine oracle u4 <...>_4fold|_{u4=0} = <...>_3fold, conifold f in {0,1,-1}",
            dual_engine_oracle());
  criterion(4, "conifold <>_{0,0,d} = 1/d^3 for d = 1,2 against frozen scratch graphs",
            known_closed_values());

  {
    std::string note;
    bool ok = false;
    try {
      ok = pole_structure(note);
    } catch (const std::exception& e) {
      note = e.what();
    }
    criterion(5, "pole structure of the open/closed expansion at caps (2,2)", ok, note);
  }

  VerifyData c3 = make_verify_data("c3", 1, caps);
  VerifyData coni = make_verify_data("conifold", 1, caps);

  {
    bool ok = true;
    for (VerifyData* d : {&c3, &coni}) ok = ok && verify_wdvv_4fold(d->F4, d->g.x4.euler).pass;
    criterion(6, "WDVV for the 4-fold at caps (2,2), t-cap 1, c3 and conifold", ok);
  }

  {
    // criterion 7: all seven identities, faithfully as stated.
    bool a_and_c = true, b_parts = true;
    std::string sample;
    for (VerifyData* d : {&c3, &coni}) {
      auto results =
          verify_identity_collection(d->F0X, d->g.x3.euler, d->FXr, d->intF01, d->h);
      for (const CheckResult& r : results) {
        bool is_b = r.name == "(Ib)" || r.name == "(IIb)" || r.name == "(IIIb)";
        if (!r.pass && is_b && sample.empty() && !r.details.empty()) sample = r.details[0];
        (is_b ? b_parts : a_and_c) = (is_b ? b_parts : a_and_c) && r.pass;
        std::cout << "    identity " << r.name << ": " << (r.pass ? "pass" : "FAIL")
                  << std::endl;
      }
    }
    criterion(7, "identity collection (Ia)-(IIIb) at caps (2,2)", a_and_c && b_parts,
              a_and_c && !b_parts
                  ? "(Ia),(Ic),(IIa),(IIIa) hold; (Ib),(IIb),(IIIb) fail at class (1,2), "
                    "e.g. " + sample + "; see README and the verification notes"
                  : "");
  }

  {
    FrobPotential F = frob_potential(coni.FXr, coni.intF01);
    bool wdvv = verify_wdvv_h1(F, coni.h).pass;
    StructureConstants<DualScalar> sc = structure_constants(F, coni.h);
    bool assoc = verify_associativity(sc, "H1").pass;
    bool compat = true;
    for (int i = 0; i <= sc.m && compat; ++i)
      for (int j = 0; j <= sc.m && compat; ++j)
        for (int k = 0; k <= sc.m && compat; ++k) {
          DualSeries diff = sc.at(i, j, k).scaled(DualScalar(coni.h.h(k))) -
                            sc.at(j, k, i).scaled(DualScalar(coni.h.h(i)));
          for (const auto& [key, v] : diff.coefficients())
            if (!v.is_zero()) compat = false;
        }
    IdempotentBasis basis = idempotent_lift(sc, 3);
    bool idem = verify_idempotents(sc, basis).pass;
    criterion(8, "H1 Frobenius structure: dual-number WDVV, compatibility, idempotents mod I^3",
              wdvv && assoc && compat && idem);
  }

  {
    VectorPotential V = vector_potential(coni.FXr, coni.intF01, coni.h);
    StructureConstants<RationalFn> sc = structure_constants(V);
    CheckResult assoc = verify_associativity(sc, "F-manifold");
    CheckResult nil = nilpotent_no_unit_report(sc, 3);
    CheckResult ext = verify_fmanifold_extension(sc, coni.FXr, coni.intF01, coni.h);
    std::cout << "    F-manifold associativity: " << (assoc.pass ? "pass" : "FAIL")
              << std::endl;
    std::cout << "    nilpotency and unit infeasibility: " << (nil.pass ? "pass" : "FAIL")
              << std::endl;
    std::cout << "    extension of the closed structure: " << (ext.pass ? "pass" : "FAIL")
              << std::endl;
    criterion(9, "H2 flat F-manifold at caps (2,2)", assoc.pass && nil.pass && ext.pass,
              !assoc.pass && nil.pass && ext.pass
                  ? "nilpotency, no-unit and extension hold; associativity fails at class "
                    "(1,2) with the (Ib)-type residuals; see README"
                  : "");
  }

  {
    RunConfig cfg;
    cfg.geometry = "conifold";
    cfg.framing = 1;
    cfg.caps.beta = 1;
    cfg.caps.d = 1;
    cfg.command = "all";
    Report r1 = run_pipeline(cfg);
    Report r2 = run_pipeline(cfg);
    bool deterministic = r1.text == r2.text && !r1.text.empty();
    // exactness audit: no floating point in any coefficient path
    bool clean = true;
#ifdef OWDVV_SOURCE_DIR
    std::string cmd = "grep -rnE '\\b(float|double)\\b' " OWDVV_SOURCE_DIR "/src "
                      OWDVV_SOURCE_DIR "/include " OWDVV_SOURCE_DIR "/tools > /tmp/float_audit.txt 2>&1";
    int rc = std::system(cmd.c_str());
    clean = rc != 0;  // grep exits 1 when nothing matches
#endif
    criterion(10, "deterministic reports and no floating point in the engine",
              deterministic && clean);
  }

  std::cout << (failures == 0 ? "acceptance: all criteria PASS"
                              : "acceptance: " + std::to_string(failures) + " criteria FAIL")
            << std::endl;
  return failures;
}

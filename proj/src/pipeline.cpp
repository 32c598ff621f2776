#include "owdvv/pipeline.hpp"

#include <fstream>
#include <sstream>

namespace owdvv {

namespace {

struct ReportWriter {
  std::ostringstream out;
  bool pass = true;

  void section(const std::string& name) { out << "== " << name << " ==\n"; }
  void line(const std::string& s) { out << s << "\n"; }
  void result(const CheckResult& r) {
    pass = pass && r.pass;
    out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "\n";
    for (const std::string& d : r.details) out << "    " << d << "\n";
  }
};

std::string geometry_hash(const Fan3& fan) {
  // FNV-1a over the normalized rays and cones; identifies the geometry in
  // reports independently of the input presentation
  unsigned long long h = 1469598103934665603ull;
  auto mix = [&h](long x) {
    h ^= (unsigned long long)(x + 0x9e3779b97f4a7c15ull);
    h *= 1099511628211ull;
  };
  for (const Vec3& b : fan.rays)
    for (long x : b) mix(x);
  for (const auto& c : fan.cones3)
    for (int x : c) mix(x);
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

std::string class_string(const std::vector<int>& cls) {
  std::string s = "(";
  for (size_t i = 0; i < cls.size(); ++i) s += (i ? "," : "") + std::to_string(cls[i]);
  return s + ")";
}

/// Everything the verification commands consume, built once.
struct PipelineData {
  RfSeries F0X;          // unrestricted closed potential of X
  TildePotential F4;     // closed potential of X~
  ExpansionPieces pieces;
  RfSeries closed_from_4fold;
  RfSeries intF01;       // antiderivative disk potential
  RfSeries FXr;          // F0X restricted to u2 = f u1
  PairingMatrix pairing;
};

PipelineData build_data(const GeometryBundle& g, const RunConfig& config, bool need_restricted) {
  PipelineData d;
  d.F0X = build_F0_3fold(g.x3, config.caps);
  d.F4 = build_F0_4fold(g.x4, config.caps);
  d.pieces = extract_pieces(d.F4, config.framing);
  d.closed_from_4fold = extract_closed(d.pieces);
  d.intF01 = extract_disk(d.pieces);
  if (need_restricted) {
    d.pairing = build_pairing(g.x3, config.framing);
    d.FXr = restrict_series(d.F0X, config.framing);
  }
  return d;
}

CheckResult check_dual_engine(const PipelineData& d) {
  CheckResult res("open/closed correspondence: closed sector");
  RfSeries diff = d.closed_from_4fold - d.F0X;
  int listed = 0;
  for (const auto& [k, v] : diff.coefficients()) {
    if (v.is_zero()) continue;
    if (++listed <= 4)
      res.fail("mismatch at " + k.to_string() + ": " + v.to_string());
  }
  if (res.pass)
    res.note("u4-residue of the 4-fold potential reproduces the 3-fold potential exactly");
  return res;
}

CheckResult check_reassembly(const PipelineData& d, int framing) {
  CheckResult res("pole decomposition reassembly");
  for (const auto& [key, coef] : d.F4.main.coefficients()) {
    RationalFn back = reassemble_coefficient(d.pieces, key);
    if (back != to_framing_coords(coef, framing))
      res.fail("reassembly mismatch at " + key.to_string());
  }
  if (res.pass) res.note("u4^-1 A + v^-1 B + u4 v^-1 C1 + C2 reproduces every coefficient");
  return res;
}

CheckResult check_pairing_compatibility(const StructureConstants<DualScalar>& sc,
                                        const PairingMatrix& h) {
  CheckResult res("pairing compatibility (x*y, z) = (x, y*z)");
  int n = sc.m + 1;
  // deterministic sample of index triples
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        DualSeries lhs = sc.at(i, j, k).scaled(DualScalar(h.h(k)));
        DualSeries rhs = sc.at(j, k, i).scaled(DualScalar(h.h(i)));
        DualSeries diff = lhs - rhs;
        for (const auto& [key, v] : diff.coefficients())
          if (!v.is_zero()) {
            res.fail("triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                     std::to_string(k) + ") at " + key.to_string());
            break;
          }
      }
  if (res.pass) res.note("holds for all index triples");
  return res;
}

void run_invariants(ReportWriter& w, const GeometryBundle& g, const RunConfig& config) {
  w.section("invariant tables");
  w.line(invariant_table(g.x3, "X", config.caps));
  w.line(invariant_table(g.x4, "X~", config.caps));
}

void run_potentials(ReportWriter& w, const PipelineData& d) {
  w.section("potentials");
  w.line(series_to_text(d.F0X, "closed3"));
  w.line("cubic coefficient of (t^{m+1})^3: " + d.F4.cubic.to_string());
  w.line(series_to_text(d.F4.main, "closed4"));
}

void run_extract(ReportWriter& w, const PipelineData& d, int framing) {
  w.section("pole decomposition (framing coordinates: names u1, v, u4)");
  w.result(check_reassembly(d, framing));
  w.line(series_to_text(d.pieces.A, "piece-A", framing_var_names()));
  w.line(series_to_text(d.pieces.B, "piece-B", framing_var_names()));
  w.line(series_to_text(d.pieces.C1, "piece-C1", framing_var_names()));
  w.line(series_to_text(d.pieces.C2, "piece-C2", framing_var_names()));
  w.result(check_dual_engine(d));
  w.section("disk potential (antiderivative)");
  w.line(series_to_text(d.intF01, "open"));
}

void run_verify_wdvv(ReportWriter& w, const GeometryBundle& g, const PipelineData& d) {
  w.section("WDVV equations");
  w.result(verify_wdvv_x(d.F0X, g.x3.euler));
  w.result(verify_wdvv_4fold(d.F4, g.x4.euler));
}

void run_verify_open_wdvv(ReportWriter& w, const GeometryBundle& g, const PipelineData& d) {
  w.section("open WDVV identity collection");
  for (const CheckResult& r :
       verify_identity_collection(d.F0X, g.x3.euler, d.FXr, d.intF01, d.pairing))
    w.result(r);
}

void run_frobenius(ReportWriter& w, const PipelineData& d, const RunConfig& config) {
  w.section("dual-number Frobenius structure");
  FrobPotential F = frob_potential(d.FXr, d.intF01);
  w.result(verify_wdvv_h1(F, d.pairing));
  StructureConstants<DualScalar> sc = structure_constants(F, d.pairing);
  w.result(verify_associativity(sc, "H1 product associativity"));
  w.result(check_pairing_compatibility(sc, d.pairing));
  IdempotentBasis basis = idempotent_lift(sc, config.idem_order);
  w.result(verify_idempotents(sc, basis));
  w.line("idempotent seed: xi_i = d_i, xi_o = -u1^-1 d_o (the open cubic makes d_o itself");
  w.line("non-idempotent: d_o * d_o = -u1 d_o)");
}

void run_fmanifold(ReportWriter& w, const PipelineData& d, const RunConfig& config) {
  w.section("flat F-manifold structure");
  VectorPotential V = vector_potential(d.FXr, d.intF01, d.pairing);
  StructureConstants<RationalFn> sc = structure_constants(V);
  w.result(verify_associativity(sc, "F-manifold product associativity"));
  w.result(nilpotent_no_unit_report(sc, config.idem_order));
  w.result(verify_fmanifold_extension(sc, d.FXr, d.intF01, d.pairing));
}

}  // namespace

GeometryBundle load_geometry(const RunConfig& config) {
  GeometryBundle g;
  if (config.geometry == "c3") {
    g.input = preset_c3(config.framing);
  } else if (config.geometry == "conifold") {
    g.input = preset_conifold(config.framing);
  } else {
    std::ifstream in(config.geometry);
    if (!in) throw std::invalid_argument("cannot open fan file '" + config.geometry + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    g.input = parse_fan_file(buf.str());
    g.input.brane.framing = config.framing;
  }
  ValidationReport rep = validate_cy3(g.input);
  if (!rep.ok()) throw std::invalid_argument("fan validation failed:\n" + rep.to_string());
  g.fan = normalize_fan(g.input);
  g.fan4 = build_4fold(g.fan);
  g.lat = curve_lattice(g.fan, g.fan4);
  g.x3 = make_target_3fold(g.fan, g.lat);
  g.x4 = make_target_4fold(g.fan4, g.lat);
  return g;
}

Report run_pipeline(const RunConfig& config) {
  ReportWriter w;
  w.line("owdvv report");
  w.line("geometry: " + config.geometry);
  w.line("framing: " + std::to_string(config.framing));
  w.line("caps: class beta <= " + std::to_string(config.caps.beta) + ", d <= " +
         std::to_string(config.caps.d) + ", extra t-degree " + std::to_string(config.caps.tdeg));
  w.line("idempotent order: " + std::to_string(config.idem_order));
  w.line("command: " + config.command);

  try {
    GeometryBundle g = load_geometry(config);
    w.section("geometry");
    w.line("geometry hash: " + geometry_hash(g.fan));
    w.line("fixed points: " + std::to_string(g.m()) + " on X, " +
           std::to_string(g.x4.num_points) + " on X~");
    for (int k = 0; k < (int)g.lat.curve_class.size(); ++k)
      w.line("compact curve " + std::to_string(k + 1) + " class " +
             class_string(g.lat.curve_class[k]));
    for (int i = 0; i < g.m(); ++i)
      w.line("Delta^" + std::to_string(i + 1) + " = " + g.x3.euler[i].to_string());
    w.line("Delta~^" + std::to_string(g.x4.num_points) + " = " +
           g.x4.euler[g.x4.special_point].to_string());

    const std::string& cmd = config.command;
    bool needs_restricted =
        cmd == "verify-open-wdvv" || cmd == "frobenius" || cmd == "fmanifold" || cmd == "all";
    if (cmd == "invariants") {
      run_invariants(w, g, config);
    } else {
      PipelineData d = build_data(g, config, needs_restricted);
      if (cmd == "potentials") {
        run_potentials(w, d);
      } else if (cmd == "extract") {
        run_extract(w, d, config.framing);
      } else if (cmd == "verify-wdvv") {
        run_verify_wdvv(w, g, d);
      } else if (cmd == "verify-open-wdvv") {
        run_verify_open_wdvv(w, g, d);
      } else if (cmd == "frobenius") {
        run_frobenius(w, d, config);
      } else if (cmd == "fmanifold") {
        run_fmanifold(w, d, config);
      } else if (cmd == "all") {
        run_potentials(w, d);
        run_extract(w, d, config.framing);
        run_verify_wdvv(w, g, d);
        run_verify_open_wdvv(w, g, d);
        run_frobenius(w, d, config);
        run_fmanifold(w, d, config);
      } else {
        throw std::invalid_argument("unknown command '" + cmd + "'");
      }
    }
  } catch (const DenominatorVanishes& e) {
    CheckResult res("framing genericity");
    res.fail(std::string(e.what()) +
             " -- the framing must avoid the finite set of integers that are "
             "non-generic for this geometry");
    w.result(res);
  } catch (const PoleStructureViolation& e) {
    CheckResult res("pole structure");
    res.fail(e.what());
    w.result(res);
  }

  w.line(w.pass ? "result: PASS" : "result: FAIL");
  Report rep;
  rep.text = w.out.str();
  rep.pass = w.pass;
  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    out << rep.text;
  }
  return rep;
}

}  // namespace owdvv

#include "owdvv/potentials.hpp"

#include <algorithm>
#include <sstream>

namespace owdvv {

namespace {

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= Rational(i);
  return r;
}

void iterate_classes(const std::vector<int>& caps, std::vector<int>& cur, size_t slot,
                     const std::function<void(const std::vector<int>&)>& fn) {
  if (slot == caps.size()) {
    fn(cur);
    return;
  }
  for (int v = 0; v <= caps[slot]; ++v) {
    cur[slot] = v;
    iterate_classes(caps, cur, slot + 1, fn);
  }
}

/// Accumulate the localization data of one class into the series.
void add_class_coefficients(RfSeries& F, const LocTarget& target, const std::vector<int>& cls,
                            int n_max, bool skip_special_patterns) {
  bool zero_class = std::all_of(cls.begin(), cls.end(), [](int x) { return x == 0; });
  for (int n = zero_class ? 3 : 0; n <= n_max; ++n) {
    for (const auto& [pattern, value] : invariants_by_pattern(target, cls, n)) {
      if (skip_special_patterns &&
          std::find(pattern.begin(), pattern.end(), target.special_point) != pattern.end())
        continue;
      SeriesKey key;
      key.cls = cls;
      key.tdeg.assign(F.m(), 0);
      for (int p : pattern) ++key.tdeg[p];
      Rational fact(1);
      for (int i = 0; i < F.m(); ++i) fact *= factorial(key.tdeg[i]);
      F.add(key, value / RationalFn(fact));
    }
  }
}

}  // namespace

bool class_effective(const LocTarget& target, const std::vector<int>& cls) {
  bool zero = std::all_of(cls.begin(), cls.end(), [](int x) { return x == 0; });
  if (zero) return true;
  // greedy DFS over curves mirrors the decomposition used by the enumerator
  std::function<bool(std::vector<int>&, size_t)> rec = [&](std::vector<int>& rem,
                                                           size_t c) -> bool {
    if (std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; })) return true;
    if (c >= target.curves.size()) return false;
    const std::vector<int>& ccls = target.curves[c].cls;
    int dmax = 0;
    for (bool fits = true; fits; ++dmax)
      for (int s = 0; s < (int)rem.size(); ++s)
        if ((dmax + 1) * ccls[s] > rem[s]) fits = false;
    for (int d = dmax; d >= 0; --d) {
      for (int s = 0; s < (int)rem.size(); ++s) rem[s] -= d * ccls[s];
      if (rec(rem, c + 1)) return true;
      for (int s = 0; s < (int)rem.size(); ++s) rem[s] += d * ccls[s];
    }
    return false;
  };
  std::vector<int> rem = cls;
  return rec(rem, 0);
}

std::vector<std::vector<int>> effective_classes(const LocTarget& target, const Caps& caps,
                                                bool require_d_zero) {
  std::vector<std::vector<int>> out;
  std::vector<int> class_caps = caps.class_caps(target.class_dim);
  if (require_d_zero) class_caps.back() = 0;
  std::vector<int> cur(target.class_dim, 0);
  iterate_classes(class_caps, cur, 0, [&](const std::vector<int>& cls) {
    if (class_effective(target, cls)) out.push_back(cls);
  });
  std::sort(out.begin(), out.end());
  return out;
}

RfSeries build_F0_3fold(const LocTarget& x3, const Caps& caps) {
  RfSeries F(x3.num_points, caps.class_caps(x3.class_dim), caps.n_max());
  for (const auto& cls : effective_classes(x3, caps, /*require_d_zero=*/true))
    add_class_coefficients(F, x3, cls, caps.n_max(), /*skip_special_patterns=*/false);
  return F;
}

TildePotential build_F0_4fold(const LocTarget& x4, const Caps& caps) {
  TildePotential F;
  F.m = x4.num_points - 1;
  F.main = RfSeries(F.m, caps.class_caps(x4.class_dim), caps.n_max());
  for (const auto& cls : effective_classes(x4, caps, /*require_d_zero=*/false))
    add_class_coefficients(F.main, x4, cls, caps.n_max(), /*skip_special_patterns=*/true);
  F.cubic = (x4.euler[x4.special_point] * RationalFn(Rational(6))).inverse();
  return F;
}

RfSeries TildePotential::third_derivative(int i, int j, int k) const {
  RfSeries r = main;
  int extra = 0;
  for (int idx : {i, j, k}) {
    if (idx < m)
      r = r.dt(idx);
    else
      ++extra;
  }
  if (extra > 0) {
    RationalFn coef = (-RationalFn::variable(U1).inverse()).pow(extra);
    r = r.scale_by_d([&](int d) { return RationalFn(Rational(d)).pow(extra) * coef; });
  }
  if (extra == 3) {
    SeriesKey origin;
    origin.cls.assign(r.class_dim(), 0);
    origin.tdeg.assign(r.m(), 0);
    r.add(origin, cubic * RationalFn(Rational(6)));
  }
  return r;
}

namespace {

[[noreturn]] void pole_violation(const SeriesKey& key, const std::string& what) {
  throw PoleStructureViolation("coefficient at " + key.to_string() + ": " + what);
}

}  // namespace

ExpansionPieces extract_pieces(const TildePotential& F4, int framing) {
  ExpansionPieces p;
  p.framing = framing;
  p.A = RfSeries::empty_like(F4.main);
  p.B = RfSeries::empty_like(F4.main);
  p.C1 = RfSeries::empty_like(F4.main);
  p.C2 = RfSeries::empty_like(F4.main);

  for (const auto& [key, R_std] : F4.main.coefficients()) {
    RationalFn R = to_framing_coords(R_std, framing);
    if (R.pole_order(U4) > 1) pole_violation(key, "u4-pole of order > 1");

    // u4-residue
    RationalFn A = (R * RationalFn::variable(U4)).restrict_zero(U4);
    RationalFn R1 = R - A / RationalFn::variable(U4);
    if (key.d() == 0) {
      // the closed sector: no winding, no v-residue; its v-structure at
      // u4 = 0 is governed by the genericity of the framing, not by the
      // correspondence
      p.A.add(key, A);
      p.C2.add(key, R1);
      continue;
    }

    // Restrictions compose in the order u4 = 0 first, then v = 0: the
    // u4-restriction may both kill v-poles whose residues are u4-multiples
    // and create v-poles out of factors like v + u4. B and C1 are the
    // v-residues of the first two u4-Taylor layers of R1.
    RationalFn R1_0 = R1.restrict_zero(U4);
    if (R1_0.pole_order(V) > 1)
      pole_violation(key, "v-pole of order > 1 survives the u4-restriction");
    RationalFn B = (R1_0 * RationalFn::variable(V)).restrict_zero(V);
    RationalFn R1_1 = ((R1 - R1_0) / RationalFn::variable(U4)).restrict_zero(U4);
    RationalFn C1 = R1_1.laurent_coeff(V, -1);
    RationalFn v = RationalFn::variable(V);
    RationalFn C2 = R1 - B / v - C1 * RationalFn::variable(U4) / v;

    p.A.add(key, A);
    p.B.add(key, B);
    p.C1.add(key, C1);
    p.C2.add(key, C2);
  }
  return p;
}

RfSeries extract_closed(const ExpansionPieces& pieces) {
  RfSeries out = RfSeries::empty_like(pieces.A);
  Poly v_image = Poly::variable(U2) - Poly::variable(U1).scaled(Rational(pieces.framing));
  for (const auto& [key, coef] : pieces.A.coefficients()) {
    if (key.d() != 0)
      throw PoleStructureViolation("closed part supported on d > 0 at " + key.to_string());
    // A is u4-free; at u4 = 0 the coordinate v means u2 - f*u1 for every sign
    // of the framing
    out.add(key, coef.substitute({{V, v_image}}));
  }
  return out;
}

RfSeries extract_disk(const ExpansionPieces& pieces) {
  RfSeries out = RfSeries::empty_like(pieces.B);
  for (const auto& [key, coef] : pieces.B.coefficients()) {
    if (key.d() == 0) {
      if (!coef.is_zero())
        throw PoleStructureViolation("disk part supported on d = 0 at " + key.to_string());
      continue;
    }
    for (int var : {U2, U3, U4})
      if (coef.depends_on(var))
        throw PoleStructureViolation("disk coefficient at " + key.to_string() +
                                     " is not a function of u1 alone");
    out.add(key, coef);
  }
  return out;
}

RfSeries d_open(const RfSeries& s) {
  return s.scale_by_d([](int d) { return RationalFn(Rational(d)); });
}

DualSeries d_open(const DualSeries& s) {
  return s.scale_by_d([](int d) { return DualScalar(RationalFn(Rational(d))); });
}

RfSeries d_tm1(const RfSeries& s) {
  RationalFn minus_inv_u1 = -RationalFn::variable(U1).inverse();
  return s.scale_by_d([&](int d) { return RationalFn(Rational(d)) * minus_inv_u1; });
}

RfSeries integrate_open(const RfSeries& s) {
  for (const auto& [k, v] : s.coefficients())
    if (k.d() == 0) throw std::domain_error("integrate_open: series has d = 0 support");
  return s.scale_by_d([](int d) { return RationalFn(Rational(1, d)); });
}

RationalFn reassemble_coefficient(const ExpansionPieces& pieces, const SeriesKey& key) {
  RationalFn u4 = RationalFn::variable(U4);
  RationalFn v = RationalFn::variable(V);
  return pieces.A.at(key) / u4 + pieces.B.at(key) / v + pieces.C1.at(key) * u4 / v +
         pieces.C2.at(key);
}

std::string SeriesKey::to_string() const {
  std::ostringstream out;
  out << "class (";
  for (size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i];
  out << ") tdeg (";
  for (size_t i = 0; i < tdeg.size(); ++i) out << (i ? "," : "") << tdeg[i];
  out << ")";
  return out.str();
}

std::string series_to_text(const RfSeries& s, const std::string& regime,
                           const std::array<std::string, kNumVars>& names) {
  std::ostringstream out;
  out << "series " << regime << " m=" << s.m() << " caps=";
  for (size_t i = 0; i < s.class_caps().size(); ++i)
    out << (i ? "," : "") << s.class_caps()[i];
  out << " tdeg=" << s.tdeg_cap() << "\n";
  for (const auto& [k, v] : s.coefficients()) {
    for (size_t i = 0; i < k.cls.size(); ++i) out << (i ? "," : "") << k.cls[i];
    out << " | ";
    for (size_t i = 0; i < k.tdeg.size(); ++i) out << (i ? "," : "") << k.tdeg[i];
    out << " | " << v.to_string(names) << "\n";
  }
  return out.str();
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

RfSeries series_from_text(const std::string& text, std::string* regime_out,
                          const std::array<std::string, kNumVars>& names) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header) || header.rfind("series ", 0) != 0)
    throw std::invalid_argument("series_from_text: missing header");
  std::istringstream hs(header);
  std::string tag, regime, mfield, capsfield, tdegfield;
  hs >> tag >> regime >> mfield >> capsfield >> tdegfield;
  if (regime_out) *regime_out = regime;
  int m = std::stoi(mfield.substr(mfield.find('=') + 1));
  std::vector<int> caps = parse_int_list(capsfield.substr(capsfield.find('=') + 1));
  int tdeg = std::stoi(tdegfield.substr(tdegfield.find('=') + 1));
  RfSeries s(m, caps, tdeg);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t p1 = line.find(" | ");
    size_t p2 = line.find(" | ", p1 + 3);
    if (p1 == std::string::npos || p2 == std::string::npos)
      throw std::invalid_argument("series_from_text: bad row '" + line + "'");
    SeriesKey key;
    key.cls = parse_int_list(line.substr(0, p1));
    key.tdeg = parse_int_list(line.substr(p1 + 3, p2 - p1 - 3));
    s.add(key, RationalFn::parse(line.substr(p2 + 3), names));
  }
  return s;
}

std::string invariant_table(const LocTarget& target, const std::string& target_name,
                            const Caps& caps) {
  std::ostringstream out;
  for (const auto& cls : effective_classes(target, caps, /*require_d_zero=*/false)) {
    bool zero_class = std::all_of(cls.begin(), cls.end(), [](int x) { return x == 0; });
    for (int n = zero_class ? 3 : 0; n <= caps.n_max(); ++n) {
      for (const auto& [pattern, value] : invariants_by_pattern(target, cls, n)) {
        out << target_name << " | ";
        for (size_t i = 0; i < cls.size(); ++i) out << (i ? "," : "") << cls[i];
        out << " | n=" << n << " | (";
        for (size_t i = 0; i < pattern.size(); ++i) out << (i ? "," : "") << pattern[i] + 1;
        out << ") | " << value.to_string() << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace owdvv

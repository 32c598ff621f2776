#include "owdvv/rationalfn.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace owdvv {

RationalFn::RationalFn(const Poly& num, const Poly& den) : num_(num) {
  if (den.is_zero()) throw DenominatorVanishes("construction with zero denominator");
  push_den(den, 1);
  reduce();
}

void RationalFn::push_den(const Poly& p, int exp) {
  if (exp == 0) return;
  if (p.is_zero()) throw DenominatorVanishes("denominator factor is zero");
  if (exp < 0) throw std::logic_error("push_den: negative exponent");
  // peel off monomial content variable by variable
  Monomial mc = p.monomial_content();
  Poly q = p;
  if (mc.degree() > 0) {
    q = *p.exact_divide(Poly::monomial(mc, Rational(1)));
    for (int i = 0; i < kNumVars; ++i)
      if (mc.e[i] > 0) den_[Poly::variable(i)] += mc.e[i] * exp;
  }
  if (q.is_constant()) {
    num_ = num_.scaled(q.constant_value().inverse().pow(exp));
    return;
  }
  Rational lc = q.leading_coeff();
  if (!lc.is_one()) {
    q = q.scaled(lc.inverse());
    num_ = num_.scaled(lc.inverse().pow(exp));
  }
  den_[q] += exp;
}

void RationalFn::reduce() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = den_.begin(); it != den_.end();) {
      const Poly& base = it->first;
      int& exp = it->second;
      while (exp > 0) {
        auto q = num_.exact_divide(base);
        if (!q) break;
        num_ = std::move(*q);
        --exp;
      }
      if (exp > 0 && base.total_degree() >= 2) {
        // composite base: fall back to a real gcd and split it
        Poly g = poly_gcd(num_, base);
        if (!g.is_constant()) {
          Poly rest = *base.exact_divide(g);
          int e = exp;
          it = den_.erase(it);
          push_den(g, e);
          push_den(rest, e);
          changed = true;
          break;
        }
      }
      if (exp == 0) {
        it = den_.erase(it);
      } else {
        ++it;
      }
    }
  }
}

Poly RationalFn::den() const {
  Poly d(Rational(1));
  for (const auto& [base, exp] : den_) d = d * base.pow(exp);
  return d;
}

RationalFn RationalFn::operator-() const {
  RationalFn r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFn operator+(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  RationalFn r;
  // union of factor sets with max multiplicities
  r.den_ = a.den_;
  for (const auto& [base, exp] : b.den_) {
    auto it = r.den_.find(base);
    if (it == r.den_.end())
      r.den_[base] = exp;
    else
      it->second = std::max(it->second, exp);
  }
  Poly na = a.num_, nb = b.num_;
  for (const auto& [base, exp] : r.den_) {
    auto ia = a.den_.find(base);
    int ea = ia == a.den_.end() ? 0 : ia->second;
    if (exp > ea) na = na * base.pow(exp - ea);
    auto ib = b.den_.find(base);
    int eb = ib == b.den_.end() ? 0 : ib->second;
    if (exp > eb) nb = nb * base.pow(exp - eb);
  }
  r.num_ = na + nb;
  r.reduce();
  return r;
}

RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }

RationalFn operator*(const RationalFn& a, const RationalFn& b) {
  if (a.is_zero() || b.is_zero()) return RationalFn();
  RationalFn r;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_;
  for (const auto& [base, exp] : b.den_) r.den_[base] += exp;
  r.reduce();
  return r;
}

RationalFn RationalFn::inverse() const {
  if (is_zero()) throw DenominatorVanishes("division by the zero rational function");
  RationalFn r;
  r.num_ = Poly(Rational(1));
  for (const auto& [base, exp] : den_) r.num_ = r.num_ * base.pow(exp);
  r.push_den(num_, 1);
  r.reduce();
  return r;
}

RationalFn operator/(const RationalFn& a, const RationalFn& b) { return a * b.inverse(); }

RationalFn RationalFn::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  RationalFn r(Rational(1));
  for (int i = 0; i < e; ++i) r = r * *this;
  return r;
}

bool operator==(const RationalFn& a, const RationalFn& b) {
  if (a.num_ == b.num_ && a.den_.size() == b.den_.size() &&
      std::equal(a.den_.begin(), a.den_.end(), b.den_.begin(),
                 [](const auto& x, const auto& y) { return x.second == y.second && x.first == y.first; }))
    return true;
  return (a - b).is_zero();
}

bool RationalFn::depends_on(int var) const {
  if (num_.depends_on(var)) return true;
  for (const auto& [base, exp] : den_)
    if (base.depends_on(var)) return true;
  return false;
}

RationalFn RationalFn::substitute(const std::vector<std::pair<int, Poly>>& bindings) const {
  RationalFn r;
  r.num_ = num_.substitute(bindings);
  for (const auto& [base, exp] : den_) {
    Poly image = base.substitute(bindings);
    if (image.is_zero())
      throw DenominatorVanishes("denominator factor " + base.to_string() +
                                " vanishes under the substitution");
    r.push_den(image, exp);
  }
  r.reduce();
  return r;
}

RationalFn RationalFn::substitute_fn(const std::vector<std::pair<int, RationalFn>>& bindings) const {
  bool all_poly = true;
  for (const auto& [var, img] : bindings)
    if (!img.is_polynomial()) all_poly = false;
  if (all_poly) {
    std::vector<std::pair<int, Poly>> polys;
    polys.reserve(bindings.size());
    for (const auto& [var, img] : bindings) polys.emplace_back(var, img.num());
    return substitute(polys);
  }
  auto eval_poly = [&](const Poly& p) {
    RationalFn acc;
    for (const auto& [m, c] : p.terms()) {
      RationalFn term{Rational(c)};
      for (int i = 0; i < kNumVars; ++i) {
        if (m.e[i] == 0) continue;
        RationalFn img = RationalFn::variable(i);
        for (const auto& [var, b] : bindings)
          if (var == i) img = b;
        term = term * img.pow(m.e[i]);
      }
      acc = acc + term;
    }
    return acc;
  };
  RationalFn result = eval_poly(num_);
  for (const auto& [base, exp] : den_) {
    RationalFn image = eval_poly(base);
    if (image.is_zero())
      throw DenominatorVanishes("denominator factor " + base.to_string() +
                                " vanishes under the substitution");
    result = result / image.pow(exp);
  }
  return result;
}

int RationalFn::pole_order(int var) const {
  if (is_zero()) return 0;
  int den_ord = 0;
  for (const auto& [base, exp] : den_) den_ord += exp * base.min_degree_in(var);
  return den_ord - num_.min_degree_in(var);
}

std::vector<std::pair<int, RationalFn>> RationalFn::laurent(int var, int max_order) const {
  std::vector<std::pair<int, RationalFn>> out;
  if (is_zero()) return out;

  // den = var^k * D with D having nonzero part at var = 0
  int k = 0;
  std::vector<std::pair<Poly, int>> reg_factors;  // var-order-0 factors of D
  for (const auto& [base, exp] : den_) {
    int t = base.min_degree_in(var);
    if (t > 0) {
      k += t * exp;
      Poly rest = *base.exact_divide(Poly::variable(var, t));
      if (!rest.is_constant()) reg_factors.emplace_back(rest, exp);
      // rest is monic with nonzero var-free part by construction
    } else {
      reg_factors.emplace_back(base, exp);
    }
  }

  int series_len = max_order + k + 1;
  if (series_len <= 0) return out;

  // series of the numerator in powers of var
  std::vector<RationalFn> series(series_len);
  for (int j = 0; j < series_len; ++j) series[j] = RationalFn(num_.coeff_of(var, j));

  // divide by each regular factor via power-series division
  for (const auto& [base, exp] : reg_factors) {
    std::vector<Poly> b(series_len);
    for (int j = 0; j < series_len && j <= base.degree_in(var); ++j) b[j] = base.coeff_of(var, j);
    if (b[0].is_zero())
      throw PoleStructureViolation("pole order undetermined for factor " + base.to_string());
    RationalFn b0_inv = RationalFn(b[0]).inverse();
    for (int rep = 0; rep < exp; ++rep) {
      std::vector<RationalFn> q(series_len);
      for (int j = 0; j < series_len; ++j) {
        RationalFn acc = series[j];
        for (int i = 0; i < j; ++i) {
          int bi = j - i;
          if (bi <= base.degree_in(var) && !b[bi].is_zero()) acc = acc - q[i] * RationalFn(b[bi]);
        }
        q[j] = acc * b0_inv;
      }
      series = std::move(q);
    }
  }

  for (int j = 0; j < series_len; ++j) {
    int e = j - k;
    if (e > max_order) break;
    if (!series[j].is_zero()) out.emplace_back(e, series[j]);
  }
  return out;
}

RationalFn RationalFn::laurent_coeff(int var, int k) const {
  for (const auto& [e, c] : laurent(var, k))
    if (e == k) return c;
  return RationalFn();
}

RationalFn RationalFn::restrict_zero(int var) const {
  if (pole_order(var) > 0)
    throw DenominatorVanishes("restriction " + Poly::default_var_names()[var] +
                              " = 0 hits a pole");
  return substitute({{var, Poly()}});
}

std::string RationalFn::to_string(const std::array<std::string, kNumVars>& names) const {
  if (den_.empty()) return num_.to_string(names);
  std::ostringstream out;
  out << "(" << num_.to_string(names) << ")/(" << den().to_string(names) << ")";
  return out.str();
}

namespace {

struct FnParser {
  const std::string& s;
  const std::array<std::string, kNumVars>& names;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace((unsigned char)s[pos])) ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("parse error at position " + std::to_string(pos) + ": " + what);
  }

  RationalFn expr() {
    RationalFn r = term();
    for (;;) {
      if (eat('+'))
        r = r + term();
      else if (eat('-'))
        r = r - term();
      else
        return r;
    }
  }

  RationalFn term() {
    RationalFn r = factor();
    for (;;) {
      skip_ws();
      if (eat('*'))
        r = r * factor();
      else if (eat('/'))
        r = r / factor();
      else
        return r;
    }
  }

  RationalFn factor() {
    skip_ws();
    if (eat('-')) return -factor();
    RationalFn base = atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      bool neg = eat('-');
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) fail("expected exponent");
      int e = std::stoi(s.substr(start, pos - start));
      base = base.pow(neg ? -e : e);
    }
    return base;
  }

  RationalFn atom() {
    skip_ws();
    if (eat('(')) {
      RationalFn r = expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      return RationalFn(Rational::from_string(s.substr(start, pos - start)));
    }
    for (int i = 0; i < kNumVars; ++i) {
      const std::string& n = names[i];
      if (s.compare(pos, n.size(), n) == 0) {
        pos += n.size();
        return RationalFn::variable(i);
      }
    }
    fail("expected atom");
  }
};

}  // namespace

RationalFn RationalFn::parse(const std::string& src, const std::array<std::string, kNumVars>& names) {
  FnParser p{src, names};
  RationalFn r = p.expr();
  p.skip_ws();
  if (p.pos != src.size()) p.fail("trailing input");
  return r;
}

// ---------------------------------------------------------------------------

Poly u2_in_framing_coords(int framing) {
  // u2 = v + f*u1 (f >= 0),  u2 = v + f*u1 - u4 (f < 0)
  Poly p = Poly::variable(V) + Poly::variable(U1).scaled(Rational(framing));
  if (framing < 0) p -= Poly::variable(U4);
  return p;
}

Poly v_in_standard_coords(int framing) {
  Poly p = Poly::variable(U2) - Poly::variable(U1).scaled(Rational(framing));
  if (framing < 0) p += Poly::variable(U4);
  return p;
}

RationalFn to_framing_coords(const RationalFn& fn, int framing) {
  return fn.substitute({{U2, u2_in_framing_coords(framing)}});
}

RationalFn from_framing_coords(const RationalFn& fn, int framing) {
  return fn.substitute({{V, v_in_standard_coords(framing)}});
}

std::string DualScalar::to_string(const std::array<std::string, kNumVars>& names) const {
  if (ep.is_zero()) return re.to_string(names);
  std::ostringstream out;
  if (!re.is_zero()) out << re.to_string(names) << " + ";
  out << "eps*[" << ep.to_string(names) << "]";
  return out.str();
}

}  // namespace owdvv

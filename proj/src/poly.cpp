#include "owdvv/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace owdvv {

Poly Poly::variable(int idx, int exp) {
  Monomial m;
  m.e[idx] = exp;
  return monomial(m, Rational(1));
}

Poly Poly::monomial(const Monomial& m, const Rational& c) {
  Poly p;
  if (!c.is_zero()) p.terms_[m] = c;
  return p;
}

Poly Poly::linear(const Rational& c1, const Rational& c2, const Rational& c3, const Rational& c4,
                  const Rational& c0) {
  Poly p(c0);
  const Rational cs[kNumVars] = {c1, c2, c3, c4};
  for (int i = 0; i < kNumVars; ++i) {
    if (!cs[i].is_zero()) {
      Monomial m;
      m.e[i] = 1;
      p.terms_[m] = cs[i];
    }
  }
  return p;
}

Rational Poly::constant_value() const {
  if (terms_.empty()) return Rational(0);
  return terms_.begin()->second;
}

bool Poly::depends_on(int var) const {
  for (const auto& [m, c] : terms_)
    if (m.e[var] > 0) return true;
  return false;
}

int Poly::degree_in(int var) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.e[var]);
  return d;
}

int Poly::min_degree_in(int var) const {
  if (terms_.empty()) return 0;
  int d = terms_.begin()->first.e[var];
  for (const auto& [m, c] : terms_) d = std::min(d, m.e[var]);
  return d;
}

Poly Poly::operator-() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_[m] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly Poly::scaled(const Rational& c) const {
  Poly r;
  if (c.is_zero()) return r;
  for (const auto& [m, v] : terms_) r.terms_[m] = v * c;
  return r;
}

Poly Poly::pow(int e) const {
  Poly r(Rational(1));
  Poly base = *this;
  int k = e;
  while (k > 0) {
    if (k & 1) r = r * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return r;
}

std::optional<Poly> Poly::exact_divide(const Poly& o) const {
  if (o.is_zero()) return std::nullopt;
  Poly rem = *this;
  Poly quot;
  const Monomial& lm = o.leading_monomial();
  const Rational& lc = o.leading_coeff();
  while (!rem.is_zero()) {
    const Monomial& rm = rem.leading_monomial();
    if (!rm.divisible_by(lm)) return std::nullopt;
    Monomial qm = rm / lm;
    Rational qc = rem.leading_coeff() / lc;
    quot.add_term(qm, qc);
    rem -= o * monomial(qm, qc);
  }
  return quot;
}

Poly Poly::coeff_of(int var, int k) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    if (m.e[var] == k) {
      Monomial m2 = m;
      m2.e[var] = 0;
      r.terms_[m2] = c;
    }
  }
  return r;
}

Poly Poly::substitute(const std::vector<std::pair<int, Poly>>& bindings) const {
  std::array<const Poly*, kNumVars> image{nullptr, nullptr, nullptr, nullptr};
  for (const auto& [var, img] : bindings) image[var] = &img;
  // cache powers of each image
  std::array<std::vector<Poly>, kNumVars> powers;
  for (int i = 0; i < kNumVars; ++i)
    if (image[i]) powers[i].push_back(Poly(Rational(1)));
  Poly result;
  for (const auto& [m, c] : terms_) {
    Poly term = monomial(Monomial{}, c);
    Monomial untouched;
    for (int i = 0; i < kNumVars; ++i) {
      if (!image[i]) {
        untouched.e[i] = m.e[i];
        continue;
      }
      while ((int)powers[i].size() <= m.e[i]) powers[i].push_back(powers[i].back() * *image[i]);
      term = term * powers[i][m.e[i]];
    }
    result += term * monomial(untouched, Rational(1));
  }
  return result;
}

Monomial Poly::monomial_content() const {
  if (terms_.empty()) return Monomial{};
  Monomial min = terms_.begin()->first;
  for (const auto& [m, c] : terms_)
    for (int i = 0; i < kNumVars; ++i) min.e[i] = std::min(min.e[i], m.e[i]);
  return min;
}

int Poly::compare(const Poly& a, const Poly& b) {
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  GrlexLess less;
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (less(ia->first, ib->first)) return -1;
    if (less(ib->first, ia->first)) return 1;
    if (ia->second != ib->second) return ia->second < ib->second ? -1 : 1;
  }
  if (ia != a.terms_.end()) return 1;
  if (ib != b.terms_.end()) return -1;
  return 0;
}

const std::array<std::string, kNumVars>& Poly::default_var_names() {
  static const std::array<std::string, kNumVars> names = {"u1", "u2", "u3", "u4"};
  return names;
}

std::string Poly::to_string(const std::array<std::string, kNumVars>& names) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  // descending order: canonical leading term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Monomial& m = it->first;
    Rational c = it->second;
    if (first) {
      if (c.sign() < 0) {
        out << "-";
        c = -c;
      }
    } else {
      out << (c.sign() < 0 ? " - " : " + ");
      if (c.sign() < 0) c = -c;
    }
    first = false;
    bool printed_coeff = false;
    if (!c.is_one() || m.is_constant()) {
      out << c.to_string();
      printed_coeff = true;
    }
    for (int i = 0; i < kNumVars; ++i) {
      if (m.e[i] == 0) continue;
      if (printed_coeff) out << "*";
      out << names[i];
      if (m.e[i] > 1) out << "^" << m.e[i];
      printed_coeff = true;
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// gcd: primitive PRS over the variables present. Only needed to keep rational
// functions canonical when a composite denominator shows up; the arithmetic
// fast paths never call it.
namespace {

int highest_var(const Poly& p) {
  for (int i = kNumVars - 1; i >= 0; --i)
    if (p.depends_on(i)) return i;
  return -1;
}

std::vector<Poly> to_univariate(const Poly& p, int var) {
  std::vector<Poly> cs(p.degree_in(var) + 1);
  for (int k = 0; k <= p.degree_in(var); ++k) cs[k] = p.coeff_of(var, k);
  return cs;
}

Poly from_univariate(const std::vector<Poly>& cs, int var) {
  Poly r;
  for (int k = 0; k < (int)cs.size(); ++k) r += cs[k] * Poly::variable(var, k);
  return r;
}

int uni_deg(const std::vector<Poly>& cs) {
  for (int k = (int)cs.size() - 1; k >= 0; --k)
    if (!cs[k].is_zero()) return k;
  return -1;
}

// pseudo-remainder of a by b in the main variable
std::vector<Poly> pseudo_rem(std::vector<Poly> a, const std::vector<Poly>& b) {
  int db = uni_deg(b);
  const Poly& lb = b[db];
  int da = uni_deg(a);
  while (da >= db && da >= 0) {
    std::vector<Poly> next(std::max<size_t>(a.size(), 1));
    for (int k = 0; k <= da; ++k) next[k] = a[k] * lb;
    const Poly& la = a[da];
    for (int k = 0; k <= db; ++k) next[da - db + k] -= la * b[k];
    next[da] = Poly();
    a = std::move(next);
    da = uni_deg(a);
  }
  return a;
}

Poly content_of(const std::vector<Poly>& cs) {
  Poly g;
  for (const Poly& c : cs) g = poly_gcd(g, c);
  return g;
}

}  // namespace

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) {
    if (b.is_zero()) return Poly();
    return b.scaled(b.leading_coeff().inverse());
  }
  if (b.is_zero()) return a.scaled(a.leading_coeff().inverse());
  if (a.is_constant() || b.is_constant()) return Poly(Rational(1));

  // pull out the shared monomial content first
  Monomial ca = a.monomial_content(), cb = b.monomial_content();
  Monomial shared;
  bool has_shared = false;
  for (int i = 0; i < kNumVars; ++i) {
    shared.e[i] = std::min(ca.e[i], cb.e[i]);
    if (shared.e[i] > 0) has_shared = true;
  }
  if (has_shared || ca.degree() > 0 || cb.degree() > 0) {
    Poly a2 = *a.exact_divide(Poly::monomial(ca, Rational(1)));
    Poly b2 = *b.exact_divide(Poly::monomial(cb, Rational(1)));
    return poly_gcd(a2, b2) * Poly::monomial(shared, Rational(1));
  }

  int var = std::max(highest_var(a), highest_var(b));
  if (var < 0) return Poly(Rational(1));
  if (!a.depends_on(var) || !b.depends_on(var)) {
    // the main variable appears in only one of them: gcd divides the other's
    // coefficients in that variable
    const Poly& flat = a.depends_on(var) ? b : a;
    const Poly& tall = a.depends_on(var) ? a : b;
    Poly g = flat;
    for (const Poly& c : to_univariate(tall, var)) g = poly_gcd(g, c);
    return g;
  }

  std::vector<Poly> ua = to_univariate(a, var), ub = to_univariate(b, var);
  Poly conta = content_of(ua), contb = content_of(ub);
  Poly cont_gcd = poly_gcd(conta, contb);
  for (Poly& c : ua) c = *c.exact_divide(conta);
  for (Poly& c : ub) c = *c.exact_divide(contb);

  // primitive PRS
  std::vector<Poly>* r0 = &ua;
  std::vector<Poly>* r1 = &ub;
  if (uni_deg(*r0) < uni_deg(*r1)) std::swap(r0, r1);
  std::vector<Poly> s0 = *r0, s1 = *r1;
  while (uni_deg(s1) >= 0) {
    std::vector<Poly> rem = pseudo_rem(s0, s1);
    if (uni_deg(rem) < 0) {
      s0 = std::move(s1);
      break;
    }
    Poly cont = content_of(rem);
    for (Poly& c : rem) c = *c.exact_divide(cont);
    s0 = std::move(s1);
    s1 = std::move(rem);
    if (uni_deg(s1) == 0) {
      s0 = s1;
      s0[0] = Poly(Rational(1));
      break;
    }
  }
  if (uni_deg(s0) == 0) return cont_gcd * s0[0];
  Poly g = from_univariate(s0, var) * cont_gcd;
  // primitive gcd must divide both inputs; otherwise they are coprime in var
  if (!a.exact_divide(g) || !b.exact_divide(g)) return cont_gcd;
  return g.scaled(g.leading_coeff().inverse());
}

// ---------------------------------------------------------------------------
// expression parser (report files, tests, CLI fixtures)
namespace {

struct Parser {
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

  Poly parse_expr() {
    Poly r = parse_term();
    for (;;) {
      if (eat('+')) {
        r += parse_term();
      } else if (eat('-')) {
        r -= parse_term();
      } else {
        return r;
      }
    }
  }

  Poly parse_term() {
    Poly r = parse_factor();
    for (;;) {
      skip_ws();
      if (eat('*')) {
        r = r * parse_factor();
      } else if (eat('/')) {
        Poly d = parse_factor();
        auto q = r.exact_divide(d);
        if (!q) fail("inexact polynomial division");
        r = *q;
      } else {
        return r;
      }
    }
  }

  Poly parse_factor() {
    skip_ws();
    if (eat('-')) return -parse_factor();
    Poly base = parse_atom();
    skip_ws();
    if (eat('^')) {
      skip_ws();
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      if (start == pos) fail("expected exponent");
      base = base.pow(std::stoi(s.substr(start, pos - start)));
    }
    return base;
  }

  Poly parse_atom() {
    skip_ws();
    if (eat('(')) {
      Poly r = parse_expr();
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    if (pos < s.size() && std::isdigit((unsigned char)s[pos])) {
      size_t start = pos;
      while (pos < s.size() && std::isdigit((unsigned char)s[pos])) ++pos;
      return Poly(Rational::from_string(s.substr(start, pos - start)));
    }
    for (int i = 0; i < kNumVars; ++i) {
      const std::string& n = names[i];
      if (s.compare(pos, n.size(), n) == 0) {
        pos += n.size();
        return Poly::variable(i);
      }
    }
    fail("expected atom");
  }
};

}  // namespace

Poly parse_poly(const std::string& src, const std::array<std::string, kNumVars>& names) {
  Parser p{src, names};
  Poly r = p.parse_expr();
  p.skip_ws();
  if (p.pos != src.size()) p.fail("trailing input");
  return r;
}

}  // namespace owdvv

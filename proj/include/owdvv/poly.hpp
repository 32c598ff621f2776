#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "owdvv/rational.hpp"

namespace owdvv {

// The engine works in a fixed ambient ring Q[u1,u2,u3,u4]. Variables are
// addressed by index 0..3. When a function has been rewritten in framing
// coordinates, index 1 holds v instead of u2; the ring structure is the same.
inline constexpr int kNumVars = 4;

enum Var : int { U1 = 0, U2 = 1, U3 = 2, U4 = 3, V = 1 };

/// Exponent vector of a monomial in u1..u4.
struct Monomial {
  std::array<int, kNumVars> e{0, 0, 0, 0};

  int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  bool is_constant() const { return degree() == 0; }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] + o.e[i];
    return r;
  }
  bool divisible_by(const Monomial& o) const {
    for (int i = 0; i < kNumVars; ++i)
      if (e[i] < o.e[i]) return false;
    return true;
  }
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (int i = 0; i < kNumVars; ++i) r.e[i] = e[i] - o.e[i];
    return r;
  }
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Canonical monomial order: graded, ties broken lexicographically with
// u4 > u3 > u2 > u1. Leading term of a polynomial is the largest monomial.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (int i = kNumVars - 1; i >= 0; --i)
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
    return false;
  }
};

/// Sparse multivariate polynomial over Rational.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(const Rational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)

  static Poly variable(int idx, int exp = 1);
  static Poly monomial(const Monomial& m, const Rational& c);
  /// c1*u1 + c2*u2 + c3*u3 + c4*u4 + c0.
  static Poly linear(const Rational& c1, const Rational& c2, const Rational& c3,
                     const Rational& c4, const Rational& c0 = Rational(0));

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }
  Rational constant_value() const;
  int total_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }
  size_t term_count() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  const Monomial& leading_monomial() const { return terms_.rbegin()->first; }
  const Rational& leading_coeff() const { return terms_.rbegin()->second; }

  bool depends_on(int var) const;
  int degree_in(int var) const;
  int min_degree_in(int var) const;  // order of vanishing along var = 0

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly scaled(const Rational& c) const;
  Poly pow(int e) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  void add_term(const Monomial& m, const Rational& c);

  /// Quotient if o divides this exactly, nullopt otherwise.
  std::optional<Poly> exact_divide(const Poly& o) const;

  /// Coefficient of var^k, a polynomial in the remaining variables.
  Poly coeff_of(int var, int k) const;

  /// Simultaneous substitution var -> image for the given bindings.
  Poly substitute(const std::vector<std::pair<int, Poly>>& bindings) const;

  /// Componentwise min of exponents over all terms (zero polynomial -> all 0).
  Monomial monomial_content() const;

  std::string to_string(const std::array<std::string, kNumVars>& names = default_var_names()) const;
  static const std::array<std::string, kNumVars>& default_var_names();

  // Total order on polynomials, used only to keep containers deterministic.
  static int compare(const Poly& a, const Poly& b);

 private:
  TermMap terms_;
};

struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const { return Poly::compare(a, b) < 0; }
};

/// gcd of two polynomials, normalized monic; gcd(0,0) = 0.
/// Primitive PRS, recursing over the variables actually present.
Poly poly_gcd(const Poly& a, const Poly& b);

/// Parse an arithmetic expression in +,-,*,/,^,(), integer rationals and the
/// given variable names. Division must yield an exact polynomial.
Poly parse_poly(const std::string& src,
                const std::array<std::string, kNumVars>& names = Poly::default_var_names());

}  // namespace owdvv

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "owdvv/poly.hpp"

namespace owdvv {

/// Raised when a substitution or restriction sends a denominator to zero,
/// i.e. the framing (or parameter choice) is not generic for the geometry.
struct DenominatorVanishes : std::runtime_error {
  explicit DenominatorVanishes(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a coefficient violates the pole bounds required by the
/// open/closed expansion.
struct PoleStructureViolation : std::runtime_error {
  explicit PoleStructureViolation(const std::string& what) : std::runtime_error(what) {}
};

/// Exact rational function in u1..u4 over Rational.
///
/// Canonical form: gcd(num, den) = 1 and the denominator is monic under the
/// graded-lex order. The denominator is kept as a product of monic factors;
/// everything the localization engine produces stays a product of linear
/// forms, so cancellation is trial division and equality is exact.
class RationalFn {
 public:
  RationalFn() = default;
  RationalFn(const Rational& c) : num_(c) {}      // NOLINT(google-explicit-constructor)
  RationalFn(long c) : num_(Rational(c)) {}       // NOLINT(google-explicit-constructor)
  RationalFn(const Poly& p) : num_(p) {}          // NOLINT(google-explicit-constructor)
  RationalFn(const Poly& num, const Poly& den);

  static RationalFn variable(int idx) { return RationalFn(Poly::variable(idx)); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.empty() && num_ == Poly(Rational(1)); }
  bool is_polynomial() const { return den_.empty(); }

  const Poly& num() const { return num_; }
  Poly den() const;  // expanded, monic
  const std::map<Poly, int, PolyLess>& den_factors() const { return den_; }

  RationalFn operator-() const;
  friend RationalFn operator+(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b);
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b);
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator-=(const RationalFn& o) { return *this = *this - o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn& operator/=(const RationalFn& o) { return *this = *this / o; }

  RationalFn inverse() const;
  RationalFn pow(int e) const;

  friend bool operator==(const RationalFn& a, const RationalFn& b);
  friend bool operator!=(const RationalFn& a, const RationalFn& b) { return !(a == b); }

  bool depends_on(int var) const;

  /// Simultaneous substitution of variables by polynomials. Throws
  /// DenominatorVanishes if a denominator factor maps to zero.
  RationalFn substitute(const std::vector<std::pair<int, Poly>>& bindings) const;

  /// General substitution by rational functions.
  RationalFn substitute_fn(const std::vector<std::pair<int, RationalFn>>& bindings) const;

  /// Order of the pole at var = 0 (positive = pole, negative = zero).
  int pole_order(int var) const;

  /// Laurent coefficients in the chosen variable: list of (exponent, coeff)
  /// with var-free coefficients, complete from the lowest exponent through
  /// max_order.
  std::vector<std::pair<int, RationalFn>> laurent(int var, int max_order) const;

  /// Coefficient of var^k in the Laurent expansion at var = 0.
  RationalFn laurent_coeff(int var, int k) const;

  /// Substitute var = 0; requires no pole there.
  RationalFn restrict_zero(int var) const;

  std::string to_string(const std::array<std::string, kNumVars>& names = Poly::default_var_names()) const;

  static RationalFn parse(const std::string& src,
                          const std::array<std::string, kNumVars>& names = Poly::default_var_names());

 private:
  void push_den(const Poly& p, int exp);
  void reduce();

  Poly num_{};
  std::map<Poly, int, PolyLess> den_{};  // monic factor -> multiplicity
};

enum class ArithOp { Add, Sub, Mul, Div };

inline RationalFn rf_arith(const RationalFn& lhs, const RationalFn& rhs, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return lhs + rhs;
    case ArithOp::Sub: return lhs - rhs;
    case ArithOp::Mul: return lhs * rhs;
    case ArithOp::Div: return lhs / rhs;
  }
  throw std::logic_error("rf_arith: bad op");
}

// ---------------------------------------------------------------------------
// Framing coordinates (u1, v, u4): v = u2 - f*u1 for f >= 0 and
// v = u2 - f*u1 + u4 for f < 0. The v slot reuses index 1.

/// u2 written in terms of v.
Poly u2_in_framing_coords(int framing);
/// v written in terms of u2.
Poly v_in_standard_coords(int framing);

/// Rewrite into (u1, v, u4); index 1 of the result means v.
RationalFn to_framing_coords(const RationalFn& fn, int framing);
/// Inverse rewrite back to (u1, u2, u4).
RationalFn from_framing_coords(const RationalFn& fn, int framing);

inline const std::array<std::string, kNumVars>& framing_var_names() {
  static const std::array<std::string, kNumVars> names = {"u1", "v", "u3", "u4"};
  return names;
}

// ---------------------------------------------------------------------------

/// Scalar in the dual-number extension by eps with eps^2 = 0.
struct DualScalar {
  RationalFn re;
  RationalFn ep;

  DualScalar() = default;
  DualScalar(const RationalFn& r) : re(r) {}  // NOLINT(google-explicit-constructor)
  DualScalar(RationalFn r, RationalFn e) : re(std::move(r)), ep(std::move(e)) {}
  static DualScalar eps(const RationalFn& e) { return DualScalar(RationalFn(), e); }

  bool is_zero() const { return re.is_zero() && ep.is_zero(); }

  DualScalar operator-() const { return {-re, -ep}; }
  friend DualScalar operator+(const DualScalar& a, const DualScalar& b) {
    return {a.re + b.re, a.ep + b.ep};
  }
  friend DualScalar operator-(const DualScalar& a, const DualScalar& b) {
    return {a.re - b.re, a.ep - b.ep};
  }
  friend DualScalar operator*(const DualScalar& a, const DualScalar& b) {
    return {a.re * b.re, a.re * b.ep + a.ep * b.re};
  }
  friend DualScalar operator/(const DualScalar& a, const DualScalar& b) {
    if (b.re.is_zero())
      throw std::domain_error("DualScalar: division by scalar with zero real part");
    RationalFn inv = b.re.inverse();
    return {a.re * inv, a.ep * inv - a.re * b.ep * inv * inv};
  }
  DualScalar& operator+=(const DualScalar& o) { return *this = *this + o; }
  DualScalar& operator-=(const DualScalar& o) { return *this = *this - o; }
  DualScalar& operator*=(const DualScalar& o) { return *this = *this * o; }

  friend bool operator==(const DualScalar& a, const DualScalar& b) {
    return a.re == b.re && a.ep == b.ep;
  }
  friend bool operator!=(const DualScalar& a, const DualScalar& b) { return !(a == b); }

  std::string to_string(const std::array<std::string, kNumVars>& names = Poly::default_var_names()) const;
};

inline DualScalar dual_arith(const DualScalar& lhs, const DualScalar& rhs, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return lhs + rhs;
    case ArithOp::Sub: return lhs - rhs;
    case ArithOp::Mul: return lhs * rhs;
    case ArithOp::Div: return lhs / rhs;
  }
  throw std::logic_error("dual_arith: bad op");
}

}  // namespace owdvv

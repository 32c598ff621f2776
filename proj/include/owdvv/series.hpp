#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "owdvv/rationalfn.hpp"

namespace owdvv {

/// Truncation bounds: class coordinates componentwise (beta entries, then the
/// winding/line-bundle entry d) and total t-degree of stored coefficients.
struct Caps {
  int beta = 2;
  int d = 2;
  int tdeg = 1;  // t-degree beyond the third derivatives

  int n_max() const { return 3 + tdeg; }
  std::vector<int> class_caps(int class_dim) const {
    std::vector<int> caps(class_dim, beta);
    caps.back() = d;
    return caps;
  }
};

struct SeriesKey {
  std::vector<int> cls;   // class coordinates, d last
  std::vector<int> tdeg;  // exponents of t^1..t^m

  int d() const { return cls.back(); }
  int total_tdeg() const {
    int s = 0;
    for (int e : tdeg) s += e;
    return s;
  }
  friend bool operator<(const SeriesKey& a, const SeriesKey& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.tdeg < b.tdeg;
  }
  friend bool operator==(const SeriesKey& a, const SeriesKey& b) {
    return a.cls == b.cls && a.tdeg == b.tdeg;
  }
  std::string to_string() const;
};

/// Truncated generating function: map from (class, t-multidegree) to
/// coefficients. Dependence on the open/compactified variable is exponential
/// and carried symbolically through the d-component of the class, never
/// expanded. A series is complete for every key within its caps.
template <class C>
class Series {
 public:
  Series() = default;
  Series(int m, std::vector<int> cls_cap, int tdeg_cap)
      : m_(m), cls_cap_(std::move(cls_cap)), tdeg_cap_(tdeg_cap) {}

  int m() const { return m_; }
  int class_dim() const { return (int)cls_cap_.size(); }
  const std::vector<int>& class_caps() const { return cls_cap_; }
  int tdeg_cap() const { return tdeg_cap_; }
  const std::map<SeriesKey, C>& coefficients() const { return coef_; }
  bool is_zero() const { return coef_.empty(); }

  bool key_within_caps(const SeriesKey& k) const {
    for (int s = 0; s < (int)k.cls.size(); ++s)
      if (k.cls[s] < 0 || k.cls[s] > cls_cap_[s]) return false;
    return k.total_tdeg() <= tdeg_cap_;
  }

  void add(const SeriesKey& k, const C& v) {
    if (!key_within_caps(k)) return;
    if (v.is_zero()) return;
    auto it = coef_.find(k);
    if (it == coef_.end()) {
      coef_[k] = v;
    } else {
      it->second = it->second + v;
      if (it->second.is_zero()) coef_.erase(it);
    }
  }

  C at(const SeriesKey& k) const {
    auto it = coef_.find(k);
    return it == coef_.end() ? C() : it->second;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series r = a.shrunk_to(merge_caps(a, b));
    for (const auto& [k, v] : b.coef_) r.add(k, v);
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series r = a.shrunk_to(merge_caps(a, b));
    for (const auto& [k, v] : b.coef_) r.add(k, C() - v);
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series r = Series::empty_like(merge_caps(a, b));
    for (const auto& [ka, va] : a.coef_) {
      for (const auto& [kb, vb] : b.coef_) {
        SeriesKey k;
        k.cls.resize(ka.cls.size());
        for (size_t s = 0; s < ka.cls.size(); ++s) k.cls[s] = ka.cls[s] + kb.cls[s];
        k.tdeg.resize(ka.tdeg.size());
        for (size_t s = 0; s < ka.tdeg.size(); ++s) k.tdeg[s] = ka.tdeg[s] + kb.tdeg[s];
        if (!r.key_within_caps(k)) continue;
        r.add(k, va * vb);
      }
    }
    return r;
  }

  Series scaled(const C& c) const {
    Series r = empty_like(*this);
    for (const auto& [k, v] : coef_) r.add(k, v * c);
    return r;
  }

  /// d/dt^i for a polynomial index i in 0..m-1. Drops the reliable t-degree.
  Series dt(int i) const {
    Series r(m_, cls_cap_, tdeg_cap_ - 1);
    for (const auto& [k, v] : coef_) {
      if (k.tdeg[i] == 0) continue;
      SeriesKey k2 = k;
      k2.tdeg[i] -= 1;
      r.add(k2, v * C(RationalFn(Rational(k.tdeg[i]))));
    }
    return r;
  }

  /// Multiply the coefficient of every class (beta, d) by factor(d). Models
  /// derivatives in the exponential-only directions.
  Series scale_by_d(const std::function<C(int)>& factor) const {
    Series r = empty_like(*this);
    for (const auto& [k, v] : coef_) r.add(k, v * factor(k.d()));
    return r;
  }

  /// Coefficient-wise map.
  template <class F>
  auto map(F&& f) const -> Series<std::decay_t<decltype(f(std::declval<const C&>()))>> {
    using R = std::decay_t<decltype(f(std::declval<const C&>()))>;
    Series<R> r(m_, cls_cap_, tdeg_cap_);
    for (const auto& [k, v] : coef_) r.add(k, f(v));
    return r;
  }

  static Series empty_like(const Series& other) {
    return Series(other.m_, other.cls_cap_, other.tdeg_cap_);
  }

 private:
  static Series merge_caps(const Series& a, const Series& b) {
    if (a.class_dim() != b.class_dim() || a.m_ != b.m_)
      throw std::invalid_argument("Series: shape mismatch");
    std::vector<int> caps(a.cls_cap_.size());
    for (size_t s = 0; s < caps.size(); ++s) caps[s] = std::min(a.cls_cap_[s], b.cls_cap_[s]);
    return Series(a.m_, caps, std::min(a.tdeg_cap_, b.tdeg_cap_));
  }

  Series shrunk_to(const Series& shape) const {
    Series r = shape;
    for (const auto& [k, v] : coef_) r.add(k, v);
    return r;
  }

  int m_ = 0;
  std::vector<int> cls_cap_{};
  int tdeg_cap_ = 0;
  std::map<SeriesKey, C> coef_{};
};

using RfSeries = Series<RationalFn>;
using DualSeries = Series<DualScalar>;

inline DualSeries as_real(const RfSeries& s) {
  return s.map([](const RationalFn& v) { return DualScalar(v); });
}
inline DualSeries as_eps(const RfSeries& s) {
  return s.map([](const RationalFn& v) { return DualScalar::eps(v); });
}
inline RfSeries real_part(const DualSeries& s) {
  return s.map([](const DualScalar& v) { return v.re; });
}
inline RfSeries eps_part(const DualSeries& s) {
  return s.map([](const DualScalar& v) { return v.ep; });
}

}  // namespace owdvv

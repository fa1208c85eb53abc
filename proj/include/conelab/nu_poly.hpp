#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

// Univariate polynomial in the weight parameter nu, dense coefficients
// low-to-high, trailing zeros trimmed (empty vector = zero polynomial).
class NuPoly {
 public:
  NuPoly() = default;
  NuPoly(Rational c) { c_.push_back(std::move(c)); trim(); }  // NOLINT
  NuPoly(int c) : NuPoly(Rational(c)) {}                      // NOLINT
  explicit NuPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

  static NuPoly nu() { return NuPoly(std::vector<Rational>{0, 1}); }
  // a*nu + b
  static NuPoly linear(const Rational& a, const Rational& b) {
    return NuPoly(std::vector<Rational>{b, a});
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const Rational& leading() const {
    if (is_zero()) throw std::domain_error("NuPoly: leading of zero");
    return c_.back();
  }
  Rational coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : Rational(0);
  }

  bool is_constant() const { return c_.size() <= 1; }
  Rational constant_value() const {
    if (!is_constant()) throw std::domain_error("NuPoly: not constant");
    return c_.empty() ? Rational(0) : c_[0];
  }

  Rational eval(const Rational& x) const {
    Rational r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
    return r;
  }

  NuPoly operator-() const {
    NuPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  friend NuPoly operator+(const NuPoly& a, const NuPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return NuPoly(std::move(c));
  }
  friend NuPoly operator-(const NuPoly& a, const NuPoly& b) { return a + (-b); }
  friend NuPoly operator*(const NuPoly& a, const NuPoly& b) {
    if (a.is_zero() || b.is_zero()) return NuPoly();
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return NuPoly(std::move(c));
  }

  friend bool operator==(const NuPoly& a, const NuPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const NuPoly& a, const NuPoly& b) { return !(a == b); }

  NuPoly scaled(const Rational& s) const {
    NuPoly r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }

  NuPoly monic() const {
    if (is_zero()) return *this;
    return scaled(Rational(1) / leading());
  }

  // Euclidean division; remainder has degree < degree(d).
  static std::pair<NuPoly, NuPoly> divmod(const NuPoly& a, const NuPoly& d) {
    if (d.is_zero()) throw std::domain_error("NuPoly: division by zero");
    NuPoly q, r = a;
    std::vector<Rational> qc(
        a.degree() >= d.degree() ? a.degree() - d.degree() + 1 : 0, Rational(0));
    while (!r.is_zero() && r.degree() >= d.degree()) {
      int k = r.degree() - d.degree();
      Rational f = r.leading() / d.leading();
      qc[k] = f;
      std::vector<Rational> rc = r.c_;
      for (int i = 0; i <= d.degree(); ++i) rc[i + k] -= f * d.c_[i];
      rc.pop_back();  // leading term cancels exactly
      r = NuPoly(std::move(rc));
    }
    return {NuPoly(std::move(qc)), r};
  }

  static NuPoly gcd(NuPoly a, NuPoly b) {
    while (!b.is_zero()) {
      NuPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
  }

  // Canonical text, descending powers: "2*nu^2 - 3*nu + 1/2"; zero is "0".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string s;
    for (int k = degree(); k >= 0; --k) {
      if (c_[k].is_zero()) continue;
      Rational c = c_[k];
      if (s.empty()) {
        if (c.sign() < 0) { s += "-"; c = -c; }
      } else {
        s += c.sign() < 0 ? " - " : " + ";
        if (c.sign() < 0) c = -c;
      }
      bool unit = (c == Rational(1)) && k > 0;
      if (!unit) s += c.to_string();
      if (k > 0) {
        if (!unit) s += "*";
        s += "nu";
        if (k > 1) s += "^" + std::to_string(k);
      }
    }
    return s;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<Rational> c_;
};

// Rational function of nu: num/den with gcd reduced out and den monic.
// This is the coefficient field for symbolic-nu computations.
class NuRat {
 public:
  NuRat() : num_(), den_(1) {}
  NuRat(int c) : num_(c), den_(1) {}                    // NOLINT
  NuRat(Rational c) : num_(std::move(c)), den_(1) {}    // NOLINT
  NuRat(NuPoly p) : num_(std::move(p)), den_(1) {}      // NOLINT
  NuRat(NuPoly n, NuPoly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::domain_error("NuRat: zero denominator");
    normalize();
  }

  static NuRat nu() { return NuRat(NuPoly::nu()); }

  const NuPoly& num() const { return num_; }
  const NuPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_ == NuPoly(1); }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  Rational constant_value() const {
    if (!is_constant()) throw std::domain_error("NuRat: not constant");
    return num_.constant_value();
  }

  Rational eval(const Rational& x) const {
    Rational d = den_.eval(x);
    if (d.is_zero()) throw std::domain_error("NuRat: pole at evaluation point");
    return num_.eval(x) / d;
  }

  NuRat operator-() const { return NuRat(-num_, den_, unchecked{}); }

  friend NuRat operator+(const NuRat& a, const NuRat& b) {
    return NuRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend NuRat operator-(const NuRat& a, const NuRat& b) { return a + (-b); }
  friend NuRat operator*(const NuRat& a, const NuRat& b) {
    return NuRat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend NuRat operator/(const NuRat& a, const NuRat& b) {
    if (b.is_zero()) throw std::domain_error("NuRat: division by zero");
    return NuRat(a.num_ * b.den_, a.den_ * b.num_);
  }
  NuRat& operator+=(const NuRat& o) { return *this = *this + o; }
  NuRat& operator-=(const NuRat& o) { return *this = *this - o; }
  NuRat& operator*=(const NuRat& o) { return *this = *this * o; }
  NuRat& operator/=(const NuRat& o) { return *this = *this / o; }

  friend bool operator==(const NuRat& a, const NuRat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;  // canonical form
  }
  friend bool operator!=(const NuRat& a, const NuRat& b) { return !(a == b); }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  struct unchecked {};
  NuRat(NuPoly n, NuPoly d, unchecked) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (num_.is_zero()) { den_ = NuPoly(1); return; }
    NuPoly g = NuPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = NuPoly::divmod(num_, g).first;
      den_ = NuPoly::divmod(den_, g).first;
    }
    Rational lead = den_.leading();
    if (lead != Rational(1)) {
      Rational inv = Rational(1) / lead;
      num_ = num_.scaled(inv);
      den_ = den_.scaled(inv);
    }
  }

  NuPoly num_, den_;
};

}  // namespace conelab

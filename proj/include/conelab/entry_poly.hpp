#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "conelab/nu_poly.hpp"
#include "conelab/rational.hpp"

namespace conelab {

// Exponent vector over the d = n(n+1)/2 upper-triangle entry variables
// x_ij (1 <= i <= j <= n), listed row by row: x11, x12, ..., x1n, x22, ...
using Exponents = std::vector<uint32_t>;

inline uint32_t exponents_degree(const Exponents& e) {
  return std::accumulate(e.begin(), e.end(), 0u);
}

// Graded-lex, greatest first: higher total degree wins, then a larger
// exponent on an earlier variable wins.  Map iteration order is therefore
// the canonical term order used everywhere (printing, caching, reports).
struct GrlexGreater {
  bool operator()(const Exponents& a, const Exponents& b) const {
    uint32_t da = exponents_degree(a), db = exponents_degree(b);
    if (da != db) return da > db;
    return a > b;
  }
};

inline uint32_t entry_var_count(uint32_t n) { return n * (n + 1) / 2; }

// Index of x_ij (1-based, i <= j) in the exponent vector.
inline uint32_t entry_var_index(uint32_t n, uint32_t i, uint32_t j) {
  if (i < 1 || j < i || j > n) throw std::out_of_range("entry_var_index");
  return (i - 1) * n - (i - 1) * i / 2 + (j - 1);
}

inline std::string entry_var_name(uint32_t n, uint32_t idx) {
  for (uint32_t i = 1; i <= n; ++i)
    for (uint32_t j = i; j <= n; ++j)
      if (entry_var_index(n, i, j) == idx)
        return "x" + std::to_string(i) + std::to_string(j);
  throw std::out_of_range("entry_var_name");
}

namespace detail {
inline bool composite_coeff(const std::string& s) {
  return s.find(' ') != std::string::npos;
}
}  // namespace detail

// Polynomial in the entry variables with coefficients in K (Rational for
// exact integer data, NuRat when the weight parameter nu stays symbolic).
// Terms are kept in canonical graded-lex order; zero coefficients are never
// stored, so equality of maps is equality of polynomials.
template <class K>
class EntryPolyT {
 public:
  using Terms = std::map<Exponents, K, GrlexGreater>;

  EntryPolyT() : n_(0) {}
  explicit EntryPolyT(uint32_t n) : n_(n) {}

  static EntryPolyT zero(uint32_t n) { return EntryPolyT(n); }
  static EntryPolyT constant(uint32_t n, K c) {
    EntryPolyT p(n);
    if (!c.is_zero()) p.terms_[Exponents(entry_var_count(n), 0)] = std::move(c);
    return p;
  }
  static EntryPolyT variable(uint32_t n, uint32_t i, uint32_t j) {
    EntryPolyT p(n);
    Exponents e(entry_var_count(n), 0);
    e[entry_var_index(n, i, j)] = 1;
    p.terms_[std::move(e)] = K(1);
    return p;
  }
  static EntryPolyT trace(uint32_t n) {
    EntryPolyT p(n);
    for (uint32_t i = 1; i <= n; ++i) p += variable(n, i, i);
    return p;
  }

  uint32_t n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }

  uint32_t degree() const {  // 0 for the zero polynomial
    uint32_t d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, exponents_degree(e));
    return d;
  }

  K coeff(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  void add_term(const Exponents& e, const K& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  EntryPolyT& operator+=(const EntryPolyT& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  EntryPolyT& operator-=(const EntryPolyT& o) {
    check_same(o);
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  EntryPolyT operator-() const {
    EntryPolyT r(n_);
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend EntryPolyT operator+(EntryPolyT a, const EntryPolyT& b) { return a += b; }
  friend EntryPolyT operator-(EntryPolyT a, const EntryPolyT& b) { return a -= b; }

  friend EntryPolyT operator*(const EntryPolyT& a, const EntryPolyT& b) {
    a.check_same(b);
    EntryPolyT r(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponents e = ea;
        for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        r.add_term(e, ca * cb);
      }
    return r;
  }

  EntryPolyT scaled(const K& s) const {
    EntryPolyT r(n_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : terms_) r.terms_[e] = c * s;
    return r;
  }

  // x -> t*x: multiplies each degree-g term by t^g.
  EntryPolyT var_scaled(const Rational& t) const {
    EntryPolyT r(n_);
    for (const auto& [e, c] : terms_) {
      K f = c * K(t.pow(exponents_degree(e)));
      if (!f.is_zero()) r.terms_[e] = std::move(f);
    }
    return r;
  }

  friend bool operator==(const EntryPolyT& a, const EntryPolyT& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const EntryPolyT& a, const EntryPolyT& b) { return !(a == b); }

  // Derivative in the direction of the symmetrized matrix unit: d/dx_ii on
  // the diagonal, (1/2) d/dx_ij off it.  Symmetric in (i, j).
  EntryPolyT sym_deriv(uint32_t i, uint32_t j) const {
    if (i > j) std::swap(i, j);
    uint32_t idx = entry_var_index(n_, i, j);
    K factor = (i == j) ? K(1) : K(Rational(1, 2));
    EntryPolyT r(n_);
    for (const auto& [e, c] : terms_) {
      if (e[idx] == 0) continue;
      Exponents de = e;
      --de[idx];
      r.add_term(de, c * K(Rational(static_cast<long>(e[idx]))) * factor);
    }
    return r;
  }

  // Evaluation at a full symmetric n x n matrix (row-major rows).  Only
  // meaningful for exact rational coefficients; the symmetric check is exact
  // for Rational and tolerance-based for floating entries.
  template <class T>
  T eval(const std::vector<std::vector<T>>& x) const
    requires std::is_same_v<K, Rational>
  {
    if (x.size() != n_) throw std::invalid_argument("eval: matrix size");
    for (const auto& row : x)
      if (row.size() != n_) throw std::invalid_argument("eval: matrix size");
    for (uint32_t i = 0; i < n_; ++i)
      for (uint32_t j = i + 1; j < n_; ++j)
        if (!entries_equal(x[i][j], x[j][i]))
          throw std::invalid_argument("eval: matrix not symmetric");
    std::vector<T> vars;
    vars.reserve(entry_var_count(n_));
    for (uint32_t i = 1; i <= n_; ++i)
      for (uint32_t j = i; j <= n_; ++j) vars.push_back(x[i - 1][j - 1]);
    T total = T(0);
    for (const auto& [e, c] : terms_) {
      T term = scalar_cast<T>(c);
      for (size_t k = 0; k < e.size(); ++k)
        for (uint32_t r = 0; r < e[k]; ++r) term = term * vars[k];
      total = total + term;
    }
    return total;
  }

  // Substitute a rational value for nu (only for K = NuRat).
  EntryPolyT<Rational> substitute_nu(const Rational& nu) const
    requires std::is_same_v<K, NuRat>
  {
    EntryPolyT<Rational> r(n_);
    for (const auto& [e, c] : terms_) r.add_term(e, c.eval(nu));
    return r;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [e, c] : terms_) {
      std::string cs = c.to_string();
      std::string vars;
      for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += entry_var_name(n_, static_cast<uint32_t>(k));
        if (e[k] > 1) vars += "^" + std::to_string(e[k]);
      }
      std::string term;
      bool composite = detail::composite_coeff(cs);
      if (vars.empty()) {
        term = composite ? "(" + cs + ")" : cs;
      } else if (!composite && cs == "1") {
        term = vars;
      } else if (!composite && cs == "-1") {
        term = "-" + vars;
      } else if (composite) {
        term = "(" + cs + ")*" + vars;
      } else {
        term = cs + "*" + vars;
      }
      if (s.empty()) {
        s = term;
      } else if (term.size() > 1 && term[0] == '-') {
        s += " - " + term.substr(1);
      } else {
        s += " + " + term;
      }
    }
    return s;
  }

 private:
  void check_same(const EntryPolyT& o) const {
    if (n_ != o.n_) throw std::invalid_argument("EntryPoly: mixed n");
  }

  template <class T>
  static T scalar_cast(const Rational& c) {
    if constexpr (std::is_same_v<T, Rational>) return c;
    else return T(c.to_double());
  }

  static bool entries_equal(const Rational& a, const Rational& b) { return a == b; }
  template <class T>
  static bool entries_equal(const T& a, const T& b) {
    using std::abs;
    double scale = std::max({1.0, static_cast<double>(abs(a)),
                             static_cast<double>(abs(b))});
    return static_cast<double>(abs(a - b)) <= 1e-12 * scale;
  }

  uint32_t n_;
  Terms terms_;
};

using EntryPoly = EntryPolyT<Rational>;
using NuEntryPoly = EntryPolyT<NuRat>;

inline NuEntryPoly lift_to_nu(const EntryPoly& p) {
  NuEntryPoly r(p.n());
  for (const auto& [e, c] : p.terms()) r.add_term(e, NuRat(c));
  return r;
}

// The symbol matrix: entry (i, j) is the variable x_ij (both triangles).
template <class K>
std::vector<std::vector<EntryPolyT<K>>> entry_symbol_matrix(uint32_t n) {
  std::vector<std::vector<EntryPolyT<K>>> m(n);
  for (uint32_t i = 1; i <= n; ++i)
    for (uint32_t j = 1; j <= n; ++j)
      m[i - 1].push_back(EntryPolyT<K>::variable(n, std::min(i, j), std::max(i, j)));
  return m;
}

template <class K>
std::vector<std::vector<EntryPolyT<K>>> poly_mat_mul(
    const std::vector<std::vector<EntryPolyT<K>>>& a,
    const std::vector<std::vector<EntryPolyT<K>>>& b) {
  size_t n = a.size();
  std::vector<std::vector<EntryPolyT<K>>> r(
      n, std::vector<EntryPolyT<K>>(n, EntryPolyT<K>::zero(a[0][0].n())));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      for (size_t k = 0; k < n; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

// tr(x^k) as an exact polynomial; x^0 gives the constant n.
inline EntryPoly trace_power(uint32_t n, uint32_t k) {
  if (k == 0) return EntryPoly::constant(n, Rational(static_cast<long>(n)));
  auto x = entry_symbol_matrix<Rational>(n);
  auto p = x;
  for (uint32_t t = 1; t < k; ++t) p = poly_mat_mul(p, x);
  EntryPoly tr = EntryPoly::zero(n);
  for (uint32_t i = 0; i < n; ++i) tr += p[i][i];
  return tr;
}

}  // namespace conelab

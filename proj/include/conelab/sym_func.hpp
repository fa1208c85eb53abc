#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "conelab/entry_poly.hpp"
#include "conelab/linsolve.hpp"
#include "conelab/partitions.hpp"
#include "conelab/rational.hpp"

namespace conelab {

// Expanded form of a polynomial in the n eigenvalue variables: exponent
// tuple (length n) -> coefficient, canonical graded-lex order.
template <class K>
using ExpandedSym = std::map<std::vector<uint32_t>, K, GrlexGreater>;

template <class K>
void exp_add_term(ExpandedSym<K>& p, const std::vector<uint32_t>& e, const K& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = p.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

template <class K>
ExpandedSym<K> exp_mul(const ExpandedSym<K>& a, const ExpandedSym<K>& b) {
  ExpandedSym<K> r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<uint32_t> e = ea;
      for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
      exp_add_term(r, e, ca * cb);
    }
  return r;
}

// d/d lambda_i (0-based variable index).
template <class K>
ExpandedSym<K> exp_derivative(const ExpandedSym<K>& p, uint32_t i) {
  ExpandedSym<K> r;
  for (const auto& [e, c] : p) {
    if (e[i] == 0) continue;
    std::vector<uint32_t> de = e;
    --de[i];
    exp_add_term(r, de, c * K(Rational(static_cast<long>(e[i]))));
  }
  return r;
}

// Multiply by lambda_i^k.
template <class K>
ExpandedSym<K> exp_mul_power(const ExpandedSym<K>& p, uint32_t i, uint32_t k) {
  ExpandedSym<K> r;
  for (const auto& [e, c] : p) {
    std::vector<uint32_t> me = e;
    me[i] += k;
    r.emplace(std::move(me), c);
  }
  return r;
}

// Exact division by (lambda_i - lambda_j), i < j.  The divisor's leading
// monomial is lambda_i, so standard single-divisor reduction terminates; a
// nonzero remainder means the input was not divisible and is an error.
template <class K>
ExpandedSym<K> exp_divide_lambda_diff(ExpandedSym<K> p, uint32_t i, uint32_t j) {
  if (i >= j) throw std::invalid_argument("exp_divide_lambda_diff: need i < j");
  ExpandedSym<K> q;
  while (!p.empty()) {
    const auto& [e, c] = *p.begin();  // graded-lex leading term
    if (e[i] == 0)
      throw std::domain_error(
          "exp_divide_lambda_diff: nonzero remainder (input not divisible)");
    std::vector<uint32_t> qe = e;
    --qe[i];
    K qc = c;
    exp_add_term(q, qe, qc);
    // p -= qc * lambda_i^{qe_i+1}... : subtract qc*(lambda_i - lambda_j)*qe
    std::vector<uint32_t> t1 = qe, t2 = qe;
    ++t1[i];
    ++t2[j];
    exp_add_term(p, t1, -qc);
    exp_add_term(p, t2, qc);
  }
  return q;
}

// Symmetric polynomial in n eigenvalue variables.  The monomial-symmetric
// expansion (keys m_kappa) is always present and canonical; the power-sum
// expansion (keys p_kappa, parts <= n) is carried when it has been computed.
// Both expansions, when present, describe the same polynomial.
template <class K>
class SymFuncT {
 public:
  using Map = std::map<Partition, K, PartGreater>;

  SymFuncT() : n_(0) {}
  explicit SymFuncT(uint32_t n) : n_(n) {}

  static SymFuncT zero(uint32_t n) { return SymFuncT(n); }
  static SymFuncT constant(uint32_t n, K c) {
    SymFuncT f(n);
    if (!c.is_zero()) f.mono_[{}] = std::move(c);
    return f;
  }

  static SymFuncT from_monomial(uint32_t n, Map m) {
    SymFuncT f(n);
    for (auto& [p, c] : m) {
      if (p.size() > n)
        throw std::invalid_argument("SymFunc: partition longer than n");
      if (!c.is_zero()) f.mono_.emplace(p, std::move(c));
    }
    return f;
  }

  static SymFuncT from_powersum(uint32_t n, Map m) {
    SymFuncT f(n);
    ExpandedSym<K> e;
    for (auto& [p, c] : m) {
      if (c.is_zero()) continue;
      for (uint32_t part : p)
        if (part > n)
          throw std::invalid_argument("SymFunc: power-sum part exceeds n");
      ExpandedSym<K> term = powersum_expanded(n, p);
      for (auto& [ee, ec] : term) exp_add_term(e, ee, ec * c);
      f.pow_.emplace(p, std::move(c));
    }
    f.mono_ = expanded_to_monomial(n, e);
    return f;
  }

  static SymFuncT from_expanded(uint32_t n, const ExpandedSym<K>& e) {
    SymFuncT f(n);
    f.mono_ = expanded_to_monomial(n, e);
    return f;
  }

  uint32_t n() const { return n_; }
  bool is_zero() const { return mono_.empty(); }
  const Map& monomial() const { return mono_; }
  bool has_powersum() const { return !pow_.empty() || mono_.empty(); }
  const Map& powersum() const {
    if (!has_powersum())
      throw std::logic_error("SymFunc: power-sum basis not computed");
    return pow_;
  }

  uint32_t degree() const {
    uint32_t d = 0;
    for (const auto& [p, c] : mono_) d = std::max(d, part_weight(p));
    return d;
  }

  K mono_coeff(const Partition& p) const {
    auto it = mono_.find(p);
    return it == mono_.end() ? K(0) : it->second;
  }

  // Returns a copy carrying the power-sum expansion (degree-by-degree exact
  // change of basis m_kappa -> p_kappa).
  SymFuncT with_powersum() const {
    if (has_powersum()) return *this;
    SymFuncT f = *this;
    std::map<uint32_t, std::vector<std::pair<Partition, K>>> by_degree;
    for (const auto& [p, c] : mono_) by_degree[part_weight(p)].push_back({p, c});
    for (const auto& [g, terms] : by_degree) {
      std::vector<Partition> pow_basis = partitions_max_part(g, n_);
      std::vector<Partition> mono_basis = partitions_max_parts(g, n_);
      // A[mono][pow] = coefficient of m_mono in p_pow.
      std::vector<std::vector<K>> a(mono_basis.size(),
                                    std::vector<K>(pow_basis.size(), K(0)));
      for (size_t pc = 0; pc < pow_basis.size(); ++pc) {
        Map m = expanded_to_monomial(n_, powersum_expanded(n_, pow_basis[pc]));
        for (size_t mr = 0; mr < mono_basis.size(); ++mr) {
          auto it = m.find(mono_basis[mr]);
          if (it != m.end()) a[mr][pc] = it->second;
        }
      }
      std::vector<K> b(mono_basis.size(), K(0));
      for (const auto& [p, c] : terms) {
        for (size_t mr = 0; mr < mono_basis.size(); ++mr)
          if (mono_basis[mr] == p) b[mr] = c;
      }
      std::vector<K> x = linear_solve(a, b);
      for (size_t pc = 0; pc < pow_basis.size(); ++pc)
        if (!x[pc].is_zero()) f.pow_[pow_basis[pc]] = x[pc];
    }
    return f;
  }

  ExpandedSym<K> expanded() const {
    ExpandedSym<K> e;
    for (const auto& [p, c] : mono_)
      for (const auto& perm : distinct_permutations(p, n_)) exp_add_term(e, perm, c);
    return e;
  }

  SymFuncT operator-() const {
    SymFuncT f(n_);
    for (const auto& [p, c] : mono_) f.mono_[p] = -c;
    for (const auto& [p, c] : pow_) f.pow_[p] = -c;
    return f;
  }
  SymFuncT& operator+=(const SymFuncT& o) {
    check_same(o);
    pow_.clear();
    for (const auto& [p, c] : o.mono_) {
      auto [it, inserted] = mono_.emplace(p, c);
      if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) mono_.erase(it);
      }
    }
    return *this;
  }
  SymFuncT& operator-=(const SymFuncT& o) { return *this += -o; }
  friend SymFuncT operator+(SymFuncT a, const SymFuncT& b) { return a += b; }
  friend SymFuncT operator-(SymFuncT a, const SymFuncT& b) { return a -= b; }

  friend SymFuncT operator*(const SymFuncT& a, const SymFuncT& b) {
    a.check_same(b);
    return from_expanded(a.n_, exp_mul(a.expanded(), b.expanded()));
  }

  SymFuncT scaled(const K& s) const {
    SymFuncT f(n_);
    if (s.is_zero()) return f;
    for (const auto& [p, c] : mono_) f.mono_[p] = c * s;
    for (const auto& [p, c] : pow_) f.pow_[p] = c * s;
    return f;
  }

  // lambda -> t*lambda: scales each degree-g component by t^g.
  SymFuncT var_scaled(const Rational& t) const {
    SymFuncT f(n_);
    for (const auto& [p, c] : mono_) {
      K v = c * K(t.pow(part_weight(p)));
      if (!v.is_zero()) f.mono_[p] = std::move(v);
    }
    for (const auto& [p, c] : pow_) {
      K v = c * K(t.pow(part_weight(p)));
      if (!v.is_zero()) f.pow_[p] = std::move(v);
    }
    return f;
  }

  // lambda -> lambda + a (all variables), via binomial expansion.
  SymFuncT var_shifted(const Rational& a) const {
    ExpandedSym<K> src = expanded(), dst;
    for (const auto& [e, c] : src) {
      // expand prod_i (lambda_i + a)^{e_i}
      ExpandedSym<K> term;
      term[std::vector<uint32_t>(n_, 0)] = c;
      for (uint32_t i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        ExpandedSym<K> binom;
        Rational coeff(1);
        for (uint32_t k = 0; k <= e[i]; ++k) {
          // C(e_i, k) * a^{e_i-k} * lambda_i^k
          std::vector<uint32_t> be(n_, 0);
          be[i] = k;
          binom[be] = K(coeff * a.pow(e[i] - k));
          coeff = coeff * Rational(static_cast<long>(e[i] - k)) /
                  Rational(static_cast<long>(k + 1));
        }
        term = exp_mul(term, binom);
      }
      for (const auto& [te, tc] : term) exp_add_term(dst, te, tc);
    }
    return from_expanded(n_, dst);
  }

  template <class T>
  T eval(const std::vector<T>& lambda) const
    requires std::is_same_v<K, Rational>
  {
    if (lambda.size() != n_) throw std::invalid_argument("SymFunc eval: size");
    T total = T(0);
    for (const auto& [e, c] : expanded()) {
      T term = scalar_cast<T>(c);
      for (uint32_t i = 0; i < n_; ++i)
        for (uint32_t k = 0; k < e[i]; ++k) term = term * lambda[i];
      total = total + term;
    }
    return total;
  }

  SymFuncT<Rational> substitute_nu(const Rational& nu) const
    requires std::is_same_v<K, NuRat>
  {
    typename SymFuncT<Rational>::Map m;
    for (const auto& [p, c] : mono_) {
      Rational v = c.eval(nu);
      if (!v.is_zero()) m[p] = v;
    }
    return SymFuncT<Rational>::from_monomial(n_, std::move(m));
  }

  friend bool operator==(const SymFuncT& a, const SymFuncT& b) {
    return a.n_ == b.n_ && a.mono_ == b.mono_;
  }
  friend bool operator!=(const SymFuncT& a, const SymFuncT& b) { return !(a == b); }

  // "3/8*m[2] + 1/4*m[1,1]" (or p[...] for the power-sum expansion).
  std::string to_string(char basis = 'm') const {
    const Map* m = nullptr;
    if (basis == 'm') m = &mono_;
    else if (basis == 'p') m = &powersum();
    else throw std::invalid_argument("SymFunc to_string: basis");
    if (m->empty()) return "0";
    std::string s;
    for (const auto& [p, c] : *m) {
      std::string cs = c.to_string();
      std::string var = std::string(1, basis) + partition_to_string(p);
      std::string term;
      bool composite = detail::composite_coeff(cs);
      if (composite) term = "(" + cs + ")*" + var;
      else if (cs == "1") term = var;
      else if (cs == "-1") term = "-" + var;
      else term = cs + "*" + var;
      if (s.empty()) s = term;
      else if (term[0] == '-') s += " - " + term.substr(1);
      else s += " + " + term;
    }
    return s;
  }

  // Expanded form of p_kappa = prod_i (sum_j lambda_j^{kappa_i}).
  static ExpandedSym<K> powersum_expanded(uint32_t n, const Partition& kappa) {
    ExpandedSym<K> r;
    r[std::vector<uint32_t>(n, 0)] = K(1);
    for (uint32_t part : kappa) {
      ExpandedSym<K> pk;
      for (uint32_t i = 0; i < n; ++i) {
        std::vector<uint32_t> e(n, 0);
        e[i] = part;
        exp_add_term(pk, e, K(1));
      }
      r = exp_mul(r, pk);
    }
    return r;
  }

  // Collects an expanded polynomial into the monomial-symmetric basis,
  // verifying that all permutations of each exponent tuple carry the same
  // coefficient (throws otherwise: the input was not symmetric).
  static Map expanded_to_monomial(uint32_t n, const ExpandedSym<K>& e) {
    Map m;
    ExpandedSym<K> rest = e;
    while (!rest.empty()) {
      auto [lead, c] = *rest.begin();
      Partition p = lead;
      std::sort(p.begin(), p.end(), std::greater<uint32_t>());
      while (!p.empty() && p.back() == 0) p.pop_back();
      for (const auto& perm : distinct_permutations(p, n)) {
        auto it = rest.find(perm);
        if (it == rest.end() || it->second != c)
          throw std::domain_error("SymFunc: polynomial is not symmetric");
        rest.erase(it);
      }
      m[std::move(p)] = c;
    }
    return m;
  }

 private:
  void check_same(const SymFuncT& o) const {
    if (n_ != o.n_) throw std::invalid_argument("SymFunc: mixed n");
  }

  template <class T>
  static T scalar_cast(const Rational& c) {
    if constexpr (std::is_same_v<T, Rational>) return c;
    else return T(c.to_double());
  }

  uint32_t n_;
  Map mono_, pow_;
};

using SymFunc = SymFuncT<Rational>;
using NuSymFunc = SymFuncT<NuRat>;

inline NuSymFunc lift_to_nu(const SymFunc& f) {
  typename NuSymFunc::Map m;
  for (const auto& [p, c] : f.monomial()) m[p] = NuRat(c);
  return NuSymFunc::from_monomial(f.n(), std::move(m));
}

// Restriction to diagonal matrices: x_ij -> 0 for i < j, x_ii -> lambda_i.
// The result must be symmetric in the lambda_i or the input polynomial was
// not L-invariant, which is an error.
template <class K>
SymFuncT<K> restrict_diag(const EntryPolyT<K>& p) {
  uint32_t n = p.n();
  ExpandedSym<K> e;
  for (const auto& [exps, c] : p.terms()) {
    bool diagonal = true;
    std::vector<uint32_t> lam(n, 0);
    for (uint32_t i = 1; i <= n && diagonal; ++i)
      for (uint32_t j = i; j <= n; ++j) {
        uint32_t k = exps[entry_var_index(n, i, j)];
        if (k == 0) continue;
        if (i != j) { diagonal = false; break; }
        lam[i - 1] = k;
      }
    if (diagonal) exp_add_term(e, lam, c);
  }
  return SymFuncT<K>::from_expanded(n, e);
}

// Power-sum lift: p_k -> tr(x^k).  Exact inverse of restrict_diag on
// L-invariant polynomials.
template <class K>
EntryPolyT<K> powersum_lift(const SymFuncT<K>& f) {
  uint32_t n = f.n();
  SymFuncT<K> g = f.with_powersum();
  EntryPolyT<K> out = EntryPolyT<K>::zero(n);
  for (const auto& [kappa, c] : g.powersum()) {
    EntryPolyT<K> term = EntryPolyT<K>::constant(n, K(1));
    for (uint32_t part : kappa) {
      EntryPoly tp = trace_power(n, part);
      if constexpr (std::is_same_v<K, Rational>) term = term * tp;
      else term = term * lift_to_nu(tp);
    }
    out += term.scaled(c);
  }
  return out;
}

}  // namespace conelab

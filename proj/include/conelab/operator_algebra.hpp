#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "conelab/exp_poly.hpp"
#include "conelab/gamma_laguerre.hpp"
#include "conelab/linalg.hpp"
#include "conelab/random.hpp"
#include "conelab/spherical.hpp"

namespace conelab {

using RMat = std::vector<std::vector<Rational>>;

RMat rmat_zero(uint32_t n);
RMat rmat_identity(uint32_t n);
bool rmat_is_symmetric(const RMat& a);
bool rmat_is_skew(const RMat& a);
RMat random_sym_rational(uint32_t n, RandomStream& rng);
RMat random_skew_rational(uint32_t n, RandomStream& rng);

// Element of the complexified algebra spanned by kC (a skew, b symmetric),
// pPlus(a) and pMinus(a) with a symmetric; a general element carries all
// three parts (brackets of pure elements land back in this span).  Block
// realization on 2n x 2n matrices:
//   kC(a,b) -> (-a b; b -a),  pPlus(a) -> (a a; -a -a),  pMinus(a) -> (a -a; a -a);
// the sign on the skew part is fixed by requiring the differential operators
// below to realize the commutator ([lambda(U), lambda(V)] = lambda([U,V])).
struct LieElement {
  uint32_t n = 0;
  RMat a_k, b_k, a_plus, a_minus;

  static LieElement kC(RMat a, RMat b);
  static LieElement p_plus(RMat a);
  static LieElement p_minus(RMat a);
  static LieElement zero(uint32_t n);

  bool is_zero() const;
  RMat block() const;  // 2n x 2n realization
};

// Commutator in the block realization, decomposed back into parts; a result
// outside the span is an error (cannot happen for valid inputs).
LieElement lie_bracket(const LieElement& u, const LieElement& v);

// z, x, y with [z,x] = -2x, [z,y] = 2y, [x,y] = -4z.
struct Sl2Triple {
  LieElement z, x, y;
  static Sl2Triple make(uint32_t n);
};

// Relation operators: 1 -> z, 2 -> x, 3 -> y.
LieElement recursion_operator(int which, uint32_t n);

// Ladder coefficient for raising at slot j:
//   c_m(j) = prod_{k != j} (m_j - m_k - (j-k)/2 + 1/2) / (m_j - m_k - (j-k)/2).
// The numerator shift differs from one printed account by a sign; this is
// the version under which the raising relation holds with factor 2, and it
// vanishes exactly when m + e_j is not a valid signature.
Rational c_coeff(const Signature& m, uint32_t j);

namespace detail {

// Derivative D_ij shifted by the exponential factor: on f = e^{-tr x} p,
// the matrix-entry derivative of f is e^{-tr x} (D_ij p - delta_ij p).
template <class K>
EntryPolyT<K> shifted_deriv(const EntryPolyT<K>& p, uint32_t i, uint32_t j) {
  EntryPolyT<K> d = p.sym_deriv(i, j);
  if (i == j) d -= p;
  return d;
}

template <class K>
K to_field(const Rational& c) {
  return K(c);
}

}  // namespace detail

// Exact application of the differential operator attached to X on the class
// e^{-tr x} * polynomial (f.c must be 1):
//   kC(a,b):   tr[b x + (a x - x a - nu b) grad - x grad b grad] f
//   pPlus(a):  tr[nu a + a x + (a x + x a + nu a) grad + x grad a grad] f
//   pMinus(a): tr[nu a - a x + (a x + x a - nu a) grad - x grad a grad] f
// with tr(M grad) f = sum_{ik} M_ik D_ki f and
// tr(x grad a grad) f = sum_{ijkl} a_kl x_ji D_ik D_lj f; coefficients
// multiply outside, both derivatives act on f alone.
template <class K>
ExpPolyT<K> lambda_apply(const LieElement& X, const ExpPolyT<K>& f, const K& nu) {
  if (f.c != Rational(1))
    throw std::invalid_argument("lambda_apply: exponential factor must be exp(-tr x)");
  uint32_t n = X.n;
  if (f.n() != n) throw std::invalid_argument("lambda_apply: size mismatch");
  const EntryPolyT<K>& p = f.p;

  // Shifted first and second derivatives, indexed by symmetric pairs.
  std::vector<std::vector<EntryPolyT<K>>> d1(n, std::vector<EntryPolyT<K>>(n));
  for (uint32_t i = 1; i <= n; ++i)
    for (uint32_t j = i; j <= n; ++j) {
      d1[i - 1][j - 1] = detail::shifted_deriv(p, i, j);
      if (i != j) d1[j - 1][i - 1] = d1[i - 1][j - 1];
    }
  auto d2 = [&](uint32_t i, uint32_t k, uint32_t l, uint32_t j) {
    return detail::shifted_deriv(d1[l - 1][j - 1], i, k);
  };
  auto var = [&](uint32_t i, uint32_t j) {
    return EntryPolyT<K>::variable(n, std::min(i, j), std::max(i, j));
  };

  EntryPolyT<K> out = EntryPolyT<K>::zero(n);

  // One pure part at a time: (sign_x, with_second, second_sign) encode the
  // three displayed operator shapes.
  struct Part {
    const RMat* a;       // coefficient matrix of the second-order/trace terms
    int kind;            // 0 = kC, +1 = pPlus, -1 = pMinus
    const RMat* b;       // kC only
  };
  std::vector<Part> parts;
  if (!X.a_k.empty() || !X.b_k.empty()) parts.push_back({&X.a_k, 0, &X.b_k});
  if (!X.a_plus.empty()) parts.push_back({&X.a_plus, +1, nullptr});
  if (!X.a_minus.empty()) parts.push_back({&X.a_minus, -1, nullptr});

  for (const Part& part : parts) {
    if (part.kind == 0) {
      const RMat& a = *part.a;
      const RMat& b = *part.b;
      // tr(b x) p
      EntryPolyT<K> tr_bx = EntryPolyT<K>::zero(n);
      for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t k = 1; k <= n; ++k)
          tr_bx += var(k, i).scaled(detail::to_field<K>(b[i - 1][k - 1]));
      out += tr_bx * p;
      // (a x - x a - nu b)_{ik} D_{ki}
      for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t k = 1; k <= n; ++k) {
          EntryPolyT<K> m_ik = EntryPolyT<K>::zero(n);
          for (uint32_t t = 1; t <= n; ++t) {
            m_ik += var(t, k).scaled(detail::to_field<K>(a[i - 1][t - 1]));
            m_ik -= var(i, t).scaled(detail::to_field<K>(a[t - 1][k - 1]));
          }
          m_ik -= EntryPolyT<K>::constant(n, nu * detail::to_field<K>(b[i - 1][k - 1]));
          if (!m_ik.is_zero()) out += m_ik * d1[k - 1][i - 1];
        }
      // - sum b_{kl} x_{ji} D_{ik} D_{lj}
      for (uint32_t k = 1; k <= n; ++k)
        for (uint32_t l = 1; l <= n; ++l) {
          if (b[k - 1][l - 1].is_zero()) continue;
          K bk = detail::to_field<K>(b[k - 1][l - 1]);
          for (uint32_t i = 1; i <= n; ++i)
            for (uint32_t j = 1; j <= n; ++j)
              out -= (var(j, i) * d2(i, k, l, j)).scaled(bk);
        }
    } else {
      const RMat& a = *part.a;
      K sign = part.kind > 0 ? K(1) : K(Rational(-1));
      // nu tr(a) p  +/- tr(a x) p
      Rational tra(0);
      for (uint32_t i = 1; i <= n; ++i) tra += a[i - 1][i - 1];
      out += p.scaled(nu * detail::to_field<K>(tra));
      EntryPolyT<K> tr_ax = EntryPolyT<K>::zero(n);
      for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t k = 1; k <= n; ++k)
          tr_ax += var(k, i).scaled(detail::to_field<K>(a[i - 1][k - 1]));
      out += (tr_ax * p).scaled(sign);
      // (a x + x a +/- nu a)_{ik} D_{ki}
      for (uint32_t i = 1; i <= n; ++i)
        for (uint32_t k = 1; k <= n; ++k) {
          EntryPolyT<K> m_ik = EntryPolyT<K>::zero(n);
          for (uint32_t t = 1; t <= n; ++t) {
            m_ik += var(t, k).scaled(detail::to_field<K>(a[i - 1][t - 1]));
            m_ik += var(i, t).scaled(detail::to_field<K>(a[t - 1][k - 1]));
          }
          m_ik += EntryPolyT<K>::constant(
              n, sign * nu * detail::to_field<K>(a[i - 1][k - 1]));
          if (!m_ik.is_zero()) out += m_ik * d1[k - 1][i - 1];
        }
      // +/- sum a_{kl} x_{ji} D_{ik} D_{lj}
      for (uint32_t k = 1; k <= n; ++k)
        for (uint32_t l = 1; l <= n; ++l) {
          if (a[k - 1][l - 1].is_zero()) continue;
          K ak = sign * detail::to_field<K>(a[k - 1][l - 1]);
          for (uint32_t i = 1; i <= n; ++i)
            for (uint32_t j = 1; j <= n; ++j)
              out += (var(j, i) * d2(i, k, l, j)).scaled(ak);
        }
    }
  }
  return ExpPolyT<K>(Rational(1), std::move(out));
}

enum class MatchedForm { paper_form, half_form, both, neither };
const char* matched_form_name(MatchedForm f);

struct CoeffRecord {
  Signature target;
  NuRat value;
  bool paper_form_match = false;  // relation 2 only
  bool half_form_match = false;
};

// Result of expanding a relation operator applied to ell_m over the ell
// basis: exact coefficients, residual flag, and the relation-specific
// support / coefficient verdicts.
struct ExpansionReport {
  uint32_t n = 0;
  int relation = 0;
  Signature m;
  bool symbolic = true;
  Rational nu_value;  // when !symbolic
  std::vector<CoeffRecord> coefficients;  // nonzero terms, (degree, lex) order
  NuRat eigenvalue;                       // relation 1: coefficient at m
  bool residual_zero = false;
  bool support_ok = false;
  bool coeffs_ok = false;
  MatchedForm matched_form = MatchedForm::neither;  // relation 2
  bool pass = false;
};

// Applies relation operator `relation` to ell_m with symbolic nu, solves for
// the expansion over {ell_{m'} : |m'| <= |m|+1} exactly, and checks it
// against the expected ladder.  If nu is given, the reported values and
// verdicts are the symbolic results evaluated at that nu.
ExpansionReport verify_recursion(PsiTable& table, int relation, const Signature& m,
                                 const std::optional<Rational>& nu = std::nullopt);

// Numeric action on tube functions:
//   kC(a,b):   nu tr(bz) F(z) + D_w F(z),  w = za - az - b + zbz
//   pPlus(a):  -nu tr(az + a) F(z) - D_w F(z),  w = za + az + zaz + a
//   pMinus(a): -nu tr(-az + a) F(z) + D_w F(z), w = -(za + az) + zaz + a
// with D_w the directional derivative along the matrix direction w,
// Richardson-extrapolated central differences, relative target 1e-6.
cplx pi_apply_numeric(const LieElement& X, const std::function<cplx(const CMat&)>& F,
                      const CMat& z, double nu);

// Directional derivative helper shared with the intertwining check.
cplx dir_deriv_numeric(const std::function<cplx(const CMat&)>& F, const CMat& z,
                       const CMat& w);

}  // namespace conelab

#include "doctest.h"

#include <vector>

#include "conelab/operator_algebra.hpp"

using namespace conelab;

namespace {

NuExpPoly commutator(const LieElement& X, const LieElement& Y,
                     const NuExpPoly& f) {
  NuRat nu = NuRat::nu();
  NuExpPoly a = lambda_apply(X, lambda_apply(Y, f, nu), nu);
  NuExpPoly b = lambda_apply(Y, lambda_apply(X, f, nu), nu);
  return NuExpPoly(Rational(1), a.p - b.p);
}

RMat mat_mul(const RMat& a, const RMat& b) {
  size_t n = a.size();
  RMat r(n, std::vector<Rational>(n, Rational(0)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k)
      for (size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

}  // namespace

TEST_CASE("rank one operators reduce to the scalar closed forms") {
  // On f = e^{-t} t^k:
  //   z: e^{-t} [ (2k+nu) t^k - k(k-1+nu) t^{k-1} ]
  //   x: e^{-t} [ k(nu+k-1) t^{k-1} ]
  //   y: e^{-t} [ -k(k-1+nu) t^{k-1} + (4k+2nu) t^k - 4 t^{k+1} ]
  Sl2Triple t = Sl2Triple::make(1);
  NuRat nu = NuRat::nu();
  for (uint32_t k = 0; k <= 5; ++k) {
    EntryPolyT<NuRat> tk = EntryPolyT<NuRat>::constant(1, NuRat(Rational(1)));
    for (uint32_t r = 0; r < k; ++r) tk = tk * EntryPolyT<NuRat>::variable(1, 1, 1);
    NuExpPoly f(Rational(1), tk);

    auto mono = [&](uint32_t deg, NuRat c) {
      EntryPolyT<NuRat> p = EntryPolyT<NuRat>::zero(1);
      p.add_term(Exponents(1, deg), c);
      return p;
    };
    NuRat kk(Rational(static_cast<long>(k)));

    EntryPolyT<NuRat> ez = mono(k, NuRat(Rational(2 * (long)k)) + nu);
    if (k > 0) ez += mono(k - 1, -(kk * (kk - NuRat(Rational(1)) + nu)));
    CHECK(lambda_apply(t.z, f, nu).p == ez);

    EntryPolyT<NuRat> ex = EntryPolyT<NuRat>::zero(1);
    if (k > 0) ex = mono(k - 1, kk * (nu + kk - NuRat(Rational(1))));
    CHECK(lambda_apply(t.x, f, nu).p == ex);

    EntryPolyT<NuRat> ey =
        mono(k, NuRat(Rational(4 * (long)k)) + NuRat(Rational(2)) * nu) +
        mono(k + 1, NuRat(Rational(-4)));
    if (k > 0) ey += mono(k - 1, -(kk * (kk - NuRat(Rational(1)) + nu)));
    CHECK(lambda_apply(t.y, f, nu).p == ey);
  }
}

TEST_CASE("sl2 triple brackets close with the fixed structure constants") {
  for (uint32_t n : {1u, 2u, 3u}) {
    Sl2Triple t = Sl2Triple::make(n);
    LieElement zx = lie_bracket(t.z, t.x);
    LieElement zy = lie_bracket(t.z, t.y);
    LieElement xy = lie_bracket(t.x, t.y);

    // [z,x] = -2x: compare the 2n x 2n block realizations.
    auto scaled_block = [](const LieElement& e, long s) {
      RMat b = e.block();
      for (auto& row : b)
        for (auto& v : row) v = v * Rational(s);
      return b;
    };
    CHECK(zx.block() == scaled_block(t.x, -2));
    CHECK(zy.block() == scaled_block(t.y, 2));
    CHECK(xy.block() == scaled_block(t.z, -4));
  }
}

TEST_CASE("brackets of random elements stay in the span and match blocks") {
  RandomStream rng(17, "test-bracket", 0);
  for (uint32_t n : {2u, 3u}) {
    for (int rep = 0; rep < 4; ++rep) {
      LieElement u = LieElement::kC(random_skew_rational(n, rng),
                                    random_sym_rational(n, rng));
      LieElement v = LieElement::p_plus(random_sym_rational(n, rng));
      LieElement w = LieElement::p_minus(random_sym_rational(n, rng));
      for (auto [a, b] : {std::pair{&u, &v}, {&u, &w}, {&v, &w}}) {
        LieElement br = lie_bracket(*a, *b);
        RMat lhs = br.block();
        RMat ab = mat_mul(a->block(), b->block());
        RMat ba = mat_mul(b->block(), a->block());
        for (uint32_t i = 0; i < 2 * n; ++i)
          for (uint32_t j = 0; j < 2 * n; ++j)
            CHECK(lhs[i][j] == ab[i][j] - ba[i][j]);
      }
    }
  }
}

TEST_CASE("ladder coefficients: values and vanishing outside the cone") {
  CHECK(c_coeff(Signature::parse("1,0"), 1) == Rational(4, 3));
  CHECK(c_coeff(Signature::parse("1,0"), 2) == Rational(2, 3));
  CHECK(c_coeff(Signature::parse("0,0"), 1) == Rational(2));
  // m + e_2 = (1,2) is not a signature: the coefficient vanishes exactly.
  CHECK(c_coeff(Signature::parse("1,1"), 2).is_zero());
  CHECK_FALSE(c_coeff(Signature::parse("2,1,1"), 2).is_zero());
  CHECK(c_coeff(Signature::parse("1,1,0"), 2).is_zero());
  // Rank one always gives 1.
  for (const char* ms : {"0", "3", "7"})
    CHECK(c_coeff(Signature::parse(ms), 1) == Rational(1));
}

TEST_CASE("first relation operator is diagonal with eigenvalue n nu + 2|m|") {
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable table(n);
    for (const Signature& m : signatures_up_to(n, 2)) {
      ExpansionReport r = verify_recursion(table, 1, m);
      CHECK(r.pass);
      CHECK(r.residual_zero);
      NuRat expect = NuRat(NuPoly::linear(
          Rational(static_cast<long>(n)), Rational(2L * m.norm())));
      CHECK(r.eigenvalue == expect);
    }
  }
}

TEST_CASE("third relation operator raises with coefficient 2 c_m(j)") {
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable table(n);
    for (const Signature& m : signatures_up_to(n, 2)) {
      ExpansionReport r = verify_recursion(table, 3, m);
      CHECK(r.pass);
      CHECK(r.residual_zero);
      for (const CoeffRecord& c : r.coefficients) {
        // Identify the slot j raised by this target.
        bool found = false;
        for (uint32_t j = 1; j <= n; ++j) {
          if (m.can_add(j) && c.target == m.add_e(j)) {
            CHECK(c.value == NuRat(Rational(2) * c_coeff(m, j)));
            found = true;
          }
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("second relation operator lowers within valid signatures only") {
  PsiTable table(2);
  ExpansionReport r =
      verify_recursion(table, 2, Signature::parse("1,1"), Rational(5, 2));
  CHECK(r.pass);
  REQUIRE(r.coefficients.size() == 1);
  CHECK(r.coefficients[0].target == Signature::parse("1,0"));
  CHECK(r.coefficients[0].value == NuRat(Rational(-8)));
  CHECK(r.matched_form == MatchedForm::half_form);

  // Annihilates the ground state for every rank.
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable t2(n);
    ExpansionReport r0 = verify_recursion(t2, 2, Signature::zero(n));
    CHECK(r0.pass);
    CHECK(r0.coefficients.empty());
    CHECK(r0.residual_zero);
  }
}

TEST_CASE("creation part of the algebra annihilates the vacuum exactly") {
  RandomStream rng(23, "test-annihilate", 0);
  NuRat nu = NuRat::nu();
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable table(n);
    NuExpPoly ell0 = ell_fn(table, Signature::zero(n));
    for (int rep = 0; rep < 3; ++rep) {
      LieElement x = LieElement::p_plus(random_sym_rational(n, rng));
      NuExpPoly out = lambda_apply(x, ell0, nu);
      CHECK(out.p.is_zero());
    }
  }
}

TEST_CASE("operator commutators realize the bracket exactly") {
  RandomStream rng(31, "test-homomorphism", 0);
  for (uint32_t n : {1u, 2u}) {
    PsiTable table(n);
    Sl2Triple t = Sl2Triple::make(n);
    for (const Signature& m : signatures_up_to(n, 2)) {
      NuExpPoly ell = ell_fn(table, m);
      for (auto [a, b] :
           {std::pair{&t.z, &t.x}, {&t.z, &t.y}, {&t.x, &t.y}}) {
        NuExpPoly lhs = commutator(*a, *b, ell);
        NuExpPoly rhs = lambda_apply(lie_bracket(*a, *b), ell, NuRat::nu());
        CHECK(lhs.p == rhs.p);
      }
      // One random mixed pair per signature.
      LieElement u = LieElement::kC(random_skew_rational(n, rng),
                                    random_sym_rational(n, rng));
      LieElement v = LieElement::p_minus(random_sym_rational(n, rng));
      NuExpPoly lhs = commutator(u, v, ell);
      NuExpPoly rhs = lambda_apply(lie_bracket(u, v), ell, NuRat::nu());
      CHECK(lhs.p == rhs.p);
    }
  }
}

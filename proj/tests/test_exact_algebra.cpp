#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "conelab/entry_poly.hpp"
#include "conelab/nu_poly.hpp"
#include "conelab/partitions.hpp"
#include "conelab/rational.hpp"
#include "conelab/sym_func.hpp"

using namespace conelab;

TEST_CASE("rational arithmetic and parsing") {
  Rational a = Rational::parse("3/4");
  Rational b = Rational::parse("-5/6");
  CHECK((a + b).to_string() == "-1/12");
  CHECK((a * b).to_string() == "-5/8");
  CHECK((a / b).to_string() == "-9/10");
  CHECK(Rational::parse("6/4").to_string() == "3/2");
  CHECK(Rational::parse("-0").to_string() == "0");
  CHECK(Rational(7).to_string() == "7");
  CHECK(Rational(7, -14).to_string() == "-1/2");
  CHECK(Rational(2).pow(10).to_string() == "1024");
  CHECK(Rational(2).pow(-3).to_string() == "1/8");
  CHECK(a.to_double() == doctest::Approx(0.75));
  CHECK_THROWS(Rational::parse("1/0"));
  CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("nu polynomials: arithmetic, division, gcd") {
  NuPoly p = NuPoly::linear(Rational(1), Rational(2));   // nu + 2
  NuPoly q = NuPoly::linear(Rational(1), Rational(-1));  // nu - 1
  NuPoly prod = p * q;                                   // nu^2 + nu - 2
  CHECK(prod.eval(Rational(3)).to_string() == "10");
  auto [quo, rem] = NuPoly::divmod(prod, q);
  CHECK(rem.is_zero());
  CHECK(quo.eval(Rational(5)).to_string() == "7");
  NuPoly g = NuPoly::gcd(prod, q * NuPoly::linear(Rational(2), Rational(10)));
  // gcd is (nu - 1) up to normalization.
  CHECK(g.eval(Rational(1)).is_zero());
  CHECK_FALSE(g.eval(Rational(2)).is_zero());
}

TEST_CASE("nu rational functions reduce and evaluate") {
  NuRat f = NuRat::nu() * NuRat::nu();        // nu^2
  NuRat g = f / NuRat::nu();                  // reduces to nu
  CHECK(g == NuRat::nu());
  CHECK(g.is_polynomial());
  NuRat h = NuRat(Rational(1)) / (NuRat::nu() - NuRat(Rational(2)));
  CHECK_FALSE(h.is_polynomial());
  CHECK(h.eval(Rational(3)).to_string() == "1");
  CHECK_THROWS(h.eval(Rational(2)));  // pole
  CHECK((h * (NuRat::nu() - NuRat(Rational(2)))) == NuRat(Rational(1)));
}

TEST_CASE("signatures: parsing, order, enumeration") {
  Signature m = Signature::parse("3,1,0");
  CHECK(m.n() == 3);
  CHECK(m.norm() == 4);
  CHECK(m[1] == 3);
  CHECK(m[3] == 0);
  CHECK(m.to_string() == "3,1,0");
  CHECK_THROWS(Signature::parse("1,2"));  // not weakly decreasing
  CHECK(m.can_sub(1));
  CHECK_FALSE(m.can_sub(3));
  CHECK(m.can_add(2));
  CHECK(m.add_e(2).to_string() == "3,2,0");
  CHECK(m.sub_e(1).to_string() == "2,1,0");

  auto sigs = signatures_up_to(2, 2);
  // (0,0), (1,0), (1,1), (2,0), (2,1), (2,2) have norm <= 2: only norms
  // 0,1,2 -> (0,0),(1,0),(1,1),(2,0).
  CHECK(sigs.size() == 4);
  CHECK(sigs.front() == Signature::zero(2));
  for (size_t i = 1; i < sigs.size(); ++i) CHECK(sigs[i - 1] < sigs[i]);
}

TEST_CASE("entry polynomials: product, derivative, evaluation") {
  const uint32_t n = 2;
  EntryPoly x11 = EntryPoly::variable(n, 1, 1);
  EntryPoly x12 = EntryPoly::variable(n, 1, 2);
  EntryPoly x22 = EntryPoly::variable(n, 2, 2);
  EntryPoly det = x11 * x22 - x12 * x12;
  CHECK(det.degree() == 2);

  std::vector<std::vector<Rational>> pt{{Rational(3), Rational(1)},
                                        {Rational(1), Rational(2)}};
  CHECK(det.eval(pt).to_string() == "5");

  // Symmetrized derivative: D_11 det = x22, D_12 det = -x12 (half of -2 x12).
  CHECK(det.sym_deriv(1, 1) == x22);
  CHECK(det.sym_deriv(1, 2) == x12.scaled(Rational(-1)));
  CHECK(EntryPoly::trace(n).sym_deriv(1, 2).is_zero());
  CHECK(EntryPoly::trace(n).sym_deriv(2, 2) == EntryPoly::constant(n, Rational(1)));
}

TEST_CASE("symmetric functions: monomial basis, expansion, diag restriction") {
  const uint32_t n = 2;
  SymFunc f = SymFunc::from_monomial(
      n, {{{2}, Rational(1)}, {{1, 1}, Rational(3)}});
  // Expanded: l1^2 + l2^2 + 3 l1 l2.
  ExpandedSym<Rational> e = f.expanded();
  CHECK(e.at({2, 0}).to_string() == "1");
  CHECK(e.at({0, 2}).to_string() == "1");
  CHECK(e.at({1, 1}).to_string() == "3");

  ExpandedSym<Rational> sq = exp_mul(e, e);
  CHECK(sq.at({4, 0}).to_string() == "1");
  CHECK(sq.at({3, 1}).to_string() == "6");

  // Power-sum printing round trip: p-basis of l1^2+l2^2 is p[2].
  SymFunc g = SymFunc::from_monomial(n, {{{2}, Rational(1)}}).with_powersum();
  CHECK(g.to_string('p') == "p[2]");
}

TEST_CASE("exponent keys are graded lexicographic") {
  // GrlexGreater orders by total degree descending, then lexicographically.
  GrlexGreater cmp;
  std::vector<uint32_t> a{2, 0}, b{1, 1}, c{0, 1};
  CHECK(cmp(a, b));   // same degree, lex greater first
  CHECK(cmp(b, c));   // higher degree first
  CHECK_FALSE(cmp(a, a));
}

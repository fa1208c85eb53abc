#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "conelab/cone.hpp"
#include "conelab/spherical.hpp"

using namespace conelab;

namespace {

Rational rho_closed_form(uint32_t n, const Signature& m) {
  Rational acc(0);
  for (uint32_t i = 1; i <= n; ++i) {
    long mi = static_cast<long>(m[i]);
    acc += Rational(mi) * Rational(mi + static_cast<long>(n) - 1 -
                                   static_cast<long>(i));
  }
  return acc;
}

std::vector<std::vector<Rational>> identity_rat(uint32_t n) {
  std::vector<std::vector<Rational>> e(n, std::vector<Rational>(n, Rational(0)));
  for (uint32_t i = 0; i < n; ++i) e[i][i] = Rational(1);
  return e;
}

}  // namespace

TEST_CASE("spherical polynomials are normalized at the identity") {
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable table(n);
    for (const Signature& m : signatures_up_to(n, 3)) {
      const SphericalPoly& p = table.get(m);
      CHECK(p.entry.eval(identity_rat(n)).to_string() == "1");
    }
  }
}

TEST_CASE("radial operator eigenvalue matches the closed form") {
  for (uint32_t n : {1u, 2u, 3u}) {
    PsiTable table(n);
    for (const Signature& m : signatures_up_to(n, 4))
      CHECK(table.get(m).rho == rho_closed_form(n, m));
  }
}

TEST_CASE("radial operator fixes each spherical polynomial") {
  PsiTable table(2);
  for (const Signature& m : signatures_up_to(2, 3)) {
    const SphericalPoly& p = table.get(m);
    SymFunc img = radial_apply(p.sym);
    // img == rho * psi exactly (rho = 0 means the image vanishes).
    SymFunc::Map expect;
    for (const auto& [part, c] : p.sym.monomial()) {
      Rational scaled = p.rho * c;
      if (!scaled.is_zero()) expect[part] = scaled;
    }
    CHECK(img.monomial() == expect);
  }
}

TEST_CASE("rank two quadratic case has the known exact expansion") {
  PsiTable table(2);
  const SphericalPoly& p = table.get(Signature::parse("2,0"));
  CHECK(p.sym.mono_coeff({2}).to_string() == "3/8");
  CHECK(p.sym.mono_coeff({1, 1}).to_string() == "1/4");
  CHECK(p.sym.monomial().size() == 2);

  // Entry form: 3/8 (x11^2 + x22^2) + 1/4 x11 x22 + 1/2 x12^2.
  EntryPoly expect =
      EntryPoly::variable(2, 1, 1) * EntryPoly::variable(2, 1, 1)
          .scaled(Rational(3, 8)) +
      EntryPoly::variable(2, 2, 2) * EntryPoly::variable(2, 2, 2)
          .scaled(Rational(3, 8)) +
      EntryPoly::variable(2, 1, 1) * EntryPoly::variable(2, 2, 2)
          .scaled(Rational(1, 4)) +
      EntryPoly::variable(2, 1, 2) * EntryPoly::variable(2, 1, 2)
          .scaled(Rational(1, 2));
  CHECK(p.entry == expect);
}

TEST_CASE("determinant factor shifts the signature by one box per row") {
  // psi_{m + (1,..,1)} = det(x) * psi_m as entry polynomials.
  for (uint32_t n : {2u, 3u}) {
    PsiTable table(n);
    EntryPoly det = principal_minor(n, n);
    std::vector<uint32_t> ones(n, 1);
    for (const Signature& m : signatures_up_to(n, 2)) {
      std::vector<uint32_t> shifted = m.parts();
      for (uint32_t i = 0; i < n; ++i) shifted[i] += 1;
      const SphericalPoly& lhs = table.get(Signature(shifted));
      const SphericalPoly& rhs = table.get(m);
      CHECK(lhs.entry == det * rhs.entry);
    }
  }
}

TEST_CASE("binomial tables: determinant case and row sums") {
  PsiTable table(2);
  BinomialTable bt = binomial_coeffs(table, Signature::parse("1,1"));
  CHECK(bt.coeff.at(Signature::parse("0,0")).to_string() == "1");
  CHECK(bt.coeff.at(Signature::parse("1,0")).to_string() == "2");
  CHECK(bt.coeff.at(Signature::parse("1,1")).to_string() == "1");

  // psi_m(e + x) at x = e gives psi_m(2e) = 2^{|m|}; the same value comes
  // from summing coefficients times psi_{m'}(e) = 1.
  for (const Signature& m : signatures_up_to(2, 3)) {
    BinomialTable row = binomial_coeffs(table, m);
    Rational acc(0);
    for (const auto& [k, c] : row.coeff) acc += c;
    CHECK(acc == Rational(2).pow(m.norm()));
  }

  // Top coefficient is 1 and the zero coefficient is psi_m(e) = 1.
  for (const Signature& m : signatures_up_to(2, 3)) {
    BinomialTable row = binomial_coeffs(table, m);
    CHECK(row.coeff.at(m).to_string() == "1");
    CHECK(row.coeff.at(Signature::zero(2)).to_string() == "1");
  }
}

TEST_CASE("rotation-average oracle agrees with the exact polynomial") {
  PsiTable table(2);
  std::vector<std::vector<Rational>> x{{Rational(2), Rational(1, 2)},
                                       {Rational(1, 2), Rational(1)}};
  for (const char* ms : {"1,0", "1,1", "2,0"}) {
    const SphericalPoly& p = table.get(Signature::parse(ms));
    OracleResult r = haar_average_oracle(p, x, 40000, 123, 0, 2);
    CHECK(std::abs(r.zscore) < 4.0);
    CHECK(r.stderr_est < 0.05);
    CHECK(r.samples == 40000);
  }
}

TEST_CASE("oracle is deterministic for a fixed seed across thread counts") {
  PsiTable table(2);
  const SphericalPoly& p = table.get(Signature::parse("2,0"));
  std::vector<std::vector<Rational>> x{{Rational(1), Rational(0)},
                                       {Rational(0), Rational(2)}};
  OracleResult a = haar_average_oracle(p, x, 30000, 9, 1, 1);
  OracleResult b = haar_average_oracle(p, x, 30000, 9, 1, 4);
  CHECK(a.estimate == b.estimate);
  CHECK(a.stderr_est == b.stderr_est);
}

TEST_CASE("cache round trip is byte identical") {
  char tmpl[] = "/tmp/conelab-cache-XXXXXX";
  REQUIRE(mkdtemp(tmpl) != nullptr);
  setenv("CONELAB_CACHE_DIR", tmpl, 1);

  Signature m = Signature::parse("2,1");
  std::string file;
  {
    PsiTable table(2);
    const SphericalPoly& p = table.get(m);
    CHECK(p.entry.eval(identity_rat(2)).to_string() == "1");
    file = std::string(tmpl) + "/psi_n2_m2-1.txt";
  }
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream first;
  first << in.rdbuf();
  CHECK_FALSE(first.str().empty());

  // A fresh table reloads from disk and reproduces the same polynomial.
  {
    PsiTable table(2);
    const SphericalPoly& p = table.get(m);
    PsiTable nocache(2);
    unsetenv("CONELAB_CACHE_DIR");
    PsiTable rebuilt(2);
    const SphericalPoly& q = rebuilt.get(m);
    CHECK(p.entry == q.entry);
    CHECK(p.rho == q.rho);
    CHECK(p.sym.monomial() == q.sym.monomial());
  }
  std::string cmd = std::string("rm -rf ") + tmpl;
  REQUIRE(std::system(cmd.c_str()) == 0);
}

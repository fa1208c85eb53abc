#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "conelab/gamma_laguerre.hpp"
#include "conelab/quadrature.hpp"
#include "conelab/spherical.hpp"

using namespace conelab;

namespace {

double rel_err(double got, double want) {
  return std::fabs(got - want) / std::max(1.0, std::fabs(want));
}

double rel_err(cplx got, cplx want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

Signature zero_sig(uint32_t n) { return Signature(std::vector<uint32_t>(n, 0)); }

// Closed form of the weighted Laplace transform of ell_m at z = s*I:
//   Gamma_Omega(nu + m) (1+s)^{-n nu} ((s-1)/(s+1))^{|m|}.
cplx laplace_closed(uint32_t n, double nu, const Signature& m, cplx s) {
  std::vector<double> a;
  for (uint32_t j = 0; j < n; ++j)
    a.push_back(nu + (j < m.parts().size() ? m.parts()[j] : 0));
  return gamma_omega(n, a) * std::pow(1.0 + s, -double(n) * nu) *
         std::pow((s - 1.0) / (s + 1.0), double(m.norm()));
}

CMat scalar_matrix(uint32_t n, cplx s) {
  CMat z(n, std::vector<cplx>(n, cplx(0.0)));
  for (uint32_t i = 0; i < n; ++i) z[i][i] = s;
  return z;
}

}  // namespace

TEST_CASE("spectral Jacobian calibration matches the Selberg closed forms") {
  const double pi = std::numbers::pi;
  // Ordered-eigenvalue Gaussian integrals at beta = 1 give
  //   c_1 = 1,  c_2 = sqrt(2) pi,  c_3 = 4 sqrt(2) pi^2
  // for the trace-form Euclidean volume on symmetric matrices.
  const double expected[3] = {1.0, std::sqrt(2.0) * pi, 4.0 * std::sqrt(2.0) * pi * pi};
  for (uint32_t n = 1; n <= 3; ++n) {
    CAPTURE(n);
    Calibration cal = calibrate_cn(n, 48);
    CHECK(rel_err(cal.c, expected[n - 1]) < 1e-12);
    CHECK(cal.residual < 1e-12);
  }
}

TEST_CASE("integral of the constant spherical polynomial is Gamma_Omega(nu)") {
  for (uint32_t n = 1; n <= 3; ++n) {
    PsiTable table(n);
    const SphericalPoly& p0 = table.get(zero_sig(n));
    for (double nu : {2.5, 3.0}) {
      CAPTURE(n);
      CAPTURE(nu);
      const double got = cone_integral_invariant(n, p0.sym, nu, 1.0, 48);
      const double want = gamma_omega_scalar(n, nu);
      CHECK(rel_err(got, want) < 1e-12);
    }
  }
}

TEST_CASE("weighted integral of psi_m equals the shifted cone Gamma") {
  struct Case {
    uint32_t n;
    const char* m;
  };
  const Case cases[] = {{1, "3"}, {2, "1,0"}, {2, "2,1"}, {3, "1,1,0"}};
  const double nu = 2.75;
  for (const Case& c : cases) {
    CAPTURE(c.n);
    CAPTURE(c.m);
    PsiTable table(c.n);
    const Signature m = Signature::parse(c.m);
    const SphericalPoly& sp = table.get(m);
    std::vector<double> a;
    for (uint32_t j = 0; j < c.n; ++j) a.push_back(nu + m.parts()[j]);
    const double got = cone_integral_invariant(c.n, sp.sym, nu, 1.0, 48);
    const double want = gamma_omega(c.n, a);
    CHECK(rel_err(got, want) < 1e-12);
  }
}

TEST_CASE("rate scaling of the weighted psi_m integral") {
  // x -> x / r turns the rate into 1 and scales by r^{-(n nu + |m|)}.
  PsiTable table(2);
  const Signature m = Signature::parse("2,1");
  const SphericalPoly& sp = table.get(m);
  const double nu = 2.5;
  const double rate = 2.0;
  const double got = cone_integral_invariant(2, sp.sym, nu, rate, 48);
  const double base = cone_integral_invariant(2, sp.sym, nu, 1.0, 48);
  const double want = base * std::pow(rate, -(2.0 * nu + m.norm()));
  CHECK(rel_err(got, want) < 1e-12);
}

TEST_CASE("black-box eigenvalue integrand agrees with the invariant path") {
  PsiTable table(2);
  const SphericalPoly& sp = table.get(Signature::parse("2,1"));
  const double nu = 3.0;
  const double inv = cone_integral_invariant(2, sp.sym, nu, 1.0, 48);
  auto g = [&](const std::vector<double>& l) {
    std::vector<std::vector<double>> x{{l[0], 0.0}, {0.0, l[1]}};
    return sp.entry.eval(x);
  };
  const double bb = cone_integral_blackbox(2, g, nu, 1.0, 48);
  CHECK(rel_err(bb, inv) < 1e-12);
}

TEST_CASE("node doubling leaves the integral fixed") {
  PsiTable table(2);
  const SphericalPoly& sp = table.get(Signature::parse("2,1"));
  const double nu = 3.0;
  const double a = cone_integral_invariant(2, sp.sym, nu, 1.0, 48);
  const double b = cone_integral_invariant(2, sp.sym, nu, 1.0, 96);
  CHECK(rel_err(a, b) < 1e-12);
}

TEST_CASE("Laplace transform of ell_m matches its closed form at scalar points") {
  const Rational nu_rat = Rational::parse("5/2");
  const double nu = 2.5;
  const cplx pts[] = {cplx(1.5, 0.0), cplx(3.0, 0.0), cplx(2.0, 0.5)};
  for (uint32_t n : {1u, 2u}) {
    PsiTable table(n);
    std::vector<Signature> sigs = signatures_up_to(n, 2);
    for (const Signature& m : sigs) {
      NuExpPoly ell = ell_fn(table, m);
      ExpPoly f(ell.c, ell.p.substitute_nu(nu_rat));
      for (cplx s : pts) {
        CAPTURE(n);
        CAPTURE(m.to_string());
        CAPTURE(s.real());
        CAPTURE(s.imag());
        LaplaceResult r = laplace_transform_num(n, nu, f, scalar_matrix(n, s), 48);
        CHECK(r.stderr_est == 0.0);  // deterministic modes
        CHECK(rel_err(r.value, laplace_closed(n, nu, m, s)) < 1e-11);
      }
    }
  }
}

TEST_CASE("Monte-Carlo Laplace transform at n=3 brackets the closed form") {
  PsiTable table(3);
  const Signature m = Signature::parse("1,0,0");
  NuExpPoly ell = ell_fn(table, m);
  const double nu = 3.0;
  ExpPoly f(ell.c, ell.p.substitute_nu(Rational(3)));
  LaplaceResult r = laplace_transform_num(3, nu, f, scalar_matrix(3, cplx(2.0)), 48,
                                          200000, 7, 1, 4);
  const cplx want = laplace_closed(3, nu, m, cplx(2.0));
  REQUIRE(r.stderr_est > 0.0);
  CHECK(std::abs(r.value - want) <= 4.0 * r.stderr_est);
  CHECK(std::abs(r.value.imag()) == 0.0);  // real data, real point
}

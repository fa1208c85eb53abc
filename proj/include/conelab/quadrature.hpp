#pragma once

#include <functional>
#include <vector>

#include "conelab/exp_poly.hpp"
#include "conelab/linalg.hpp"
#include "conelab/operator_algebra.hpp"
#include "conelab/sym_func.hpp"

namespace conelab {

struct GaussRule {
  std::vector<double> nodes, weights;
};

// Classical rules via the tridiagonal eigenproblem.
GaussRule gauss_laguerre(uint32_t k, double alpha);             // t^alpha e^-t on (0,inf)
GaussRule gauss_legendre(uint32_t k, double a, double b);       // weight 1 on [a,b]
GaussRule gauss_jacobi01(uint32_t k, double alpha, double beta);  // s^alpha (1-s)^beta on [0,1]
GaussRule gauss_hermite(uint32_t k);                            // e^{-x^2} on R

// Spectral-decomposition Jacobian constant: for L-invariant f,
//   int_Omega f dx = c_n * int_{l1>...>ln>0} f(l) prod_{i<j}(l_i-l_j) dl.
// Calibrated against the exact Gaussian integral over all symmetric
// matrices; the doubled-node residual is the self-test.
struct Calibration {
  double c = 0.0;
  double residual = 0.0;
  uint32_t nodes = 0;
};
Calibration calibrate_cn(uint32_t n, uint32_t nodes = 32);

// Ordered-region eigenvalue moments
//   int_{l1>...>ln>0} prod l_i^{e_i+alpha} e^{-rate*sum l_i} dl
// by exact radial Gamma moments nested with Gauss-Jacobi substitutions; the
// n=2 variant takes distinct complex rates (real parts positive).
double ordered_moment(uint32_t n, const std::vector<uint32_t>& e, double alpha,
                      double rate, uint32_t nodes);
cplx ordered_moment_n2(uint32_t e1, uint32_t e2, double alpha, cplx rate1,
                       cplx rate2, uint32_t nodes);

// int_Omega g(eigenvalues) e^{-rate tr x} det(x)^{nu-(n+1)/2} dx, exact
// monomial moments for polynomial g; n <= 3.
double cone_integral_invariant(uint32_t n, const SymFunc& g, double nu, double rate,
                               uint32_t nodes);

// Same integral for a black-box g on the ordered eigenvalue vector.
double cone_integral_blackbox(uint32_t n,
                              const std::function<double(const std::vector<double>&)>& g,
                              double nu, double rate, uint32_t nodes);

// Laplace transform int_Omega e^{-(z|x)} f(x) dmu_nu(x) for f = e^{-c tr x} p:
// exact Gamma sums at n=1, angle x ordered-moment quadrature at n=2, and
// importance-sampled Monte Carlo at n=3 (stderr_est reported; 0 for the
// deterministic modes).
struct LaplaceResult {
  cplx value{0.0};
  double stderr_est = 0.0;
};
LaplaceResult laplace_transform_num(uint32_t n, double nu, const ExpPoly& f,
                                    const CMat& z, uint32_t nodes,
                                    uint64_t samples = 0, uint64_t seed = 0,
                                    uint64_t case_id = 0, uint32_t threads = 1);

// Weighted Bergman pairing on the half plane (n = 1 only):
//   alpha_nu Int Int F(x+iy) conj(G(x+iy)) x^{nu-2} dx dy,
// alpha_nu = 2^nu / (4 pi Gamma(nu-1)).  truncation compares against a
// domain twice as large in each direction.
struct TubeInner {
  cplx value{0.0};
  double truncation = 0.0;
};
TubeInner tube_inner_product_num(double nu, const std::function<cplx(cplx)>& F,
                                 const std::function<cplx(cplx)>& G,
                                 uint32_t nodes = 48);

// Laplace-transform intertwining: compares the transform of the operator
// applied on the cone side against the tube-side action on the transform.
struct IntertwineResult {
  double max_rel = 0.0;
  std::vector<double> per_point;
  std::vector<cplx> lhs, rhs;
};
IntertwineResult intertwining_check(uint32_t n, const Rational& nu,
                                    const LieElement& X, const ExpPoly& f,
                                    const std::vector<CMat>& points,
                                    uint32_t nodes);

}  // namespace conelab

#pragma once

#include <vector>

#include "conelab/exp_poly.hpp"
#include "conelab/linalg.hpp"
#include "conelab/nu_poly.hpp"
#include "conelab/spherical.hpp"

namespace conelab {

// Gamma function of the cone at per-slot arguments a_j:
//   (2 pi)^{n(n-1)/4} * prod_j Gamma(a_j - (j-1)/2).
// Arguments on or left of a pole are an error.
double log_gamma_omega(uint32_t n, const std::vector<double>& a);
double gamma_omega(uint32_t n, const std::vector<double>& a);
double gamma_omega_scalar(uint32_t n, double nu);

// Generalized Pochhammer (nu)_m = prod_j prod_{t<m_j} (nu + t - (j-1)/2),
// kept as an exact polynomial in nu.
NuPoly pochhammer_poly(uint32_t n, const Signature& m);
Rational pochhammer_at(const Rational& nu, uint32_t n, const Signature& m);

// Adjacent-signature ratios of the shifted cone Gamma, linear in nu:
//   up:   ratio of (m + e_j) to m      = nu + m_j - (j-1)/2
//   down: ratio of m to (m - e_j)      = nu + m_j - 1 - (j-1)/2
NuPoly gamma_step_up(const Signature& m, uint32_t j);
NuPoly gamma_step_down(const Signature& m, uint32_t j);

// Laguerre polynomial with symbolic nu,
//   L_m(x) = (nu)_m sum_{m'} binom(m, m') (1/(nu)_{m'}) psi_{m'}(-x),
// as a symmetric function of the eigenvalues and as an entry polynomial.
NuSymFunc laguerre_sym(PsiTable& table, const Signature& m);
NuEntryPoly laguerre_entry(PsiTable& table, const Signature& m);

// Laguerre function ell_m = exp(-tr x) L_m(2x), nu symbolic.
NuExpPoly ell_fn(PsiTable& table, const Signature& m);

// Rank-one closed form: coefficient of x^k in L_m is
// (-1)^k C(m,k) prod_{t=k}^{m-1} (nu + t); index k = 0..m.
std::vector<Rational> classical_laguerre_coeffs(uint32_t m, const Rational& nu);

// det(a)^p for complex symmetric a with positive definite real part; the
// branch is fixed by continuity along the segment from the identity, where
// the determinant is real and positive.
cplx det_power_pd_real(const CMat& a, double p);

// q_m(z) = det(z+e)^{-nu} psi_m((z-e)(z+e)^{-1}) on the tube over the cone.
cplx q_fn_eval(const SphericalPoly& psi, double nu, const CMat& z);

// K_nu(z, w) = Gamma_Omega(nu) det(z + conj(w))^{-nu}.
cplx kernel_eval(uint32_t n, double nu, const CMat& z, const CMat& w);

}  // namespace conelab

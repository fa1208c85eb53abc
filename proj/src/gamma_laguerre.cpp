#include "conelab/gamma_laguerre.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

double log_gamma_omega(uint32_t n, const std::vector<double>& a) {
  if (a.size() != n) throw std::invalid_argument("log_gamma_omega: need n arguments");
  double s = 0.25 * n * (n - 1) * std::log(2.0 * M_PI);
  for (uint32_t j = 1; j <= n; ++j) {
    double arg = a[j - 1] - 0.5 * (j - 1);
    if (arg <= 0.0)
      throw std::domain_error("log_gamma_omega: argument at or beyond a pole");
    s += std::lgamma(arg);
  }
  return s;
}

double gamma_omega(uint32_t n, const std::vector<double>& a) {
  return std::exp(log_gamma_omega(n, a));
}

double gamma_omega_scalar(uint32_t n, double nu) {
  return gamma_omega(n, std::vector<double>(n, nu));
}

NuPoly pochhammer_poly(uint32_t n, const Signature& m) {
  if (m.n() != n) throw std::invalid_argument("pochhammer_poly: signature length");
  NuPoly p(1);
  for (uint32_t j = 1; j <= n; ++j)
    for (uint32_t t = 0; t < m[j]; ++t)
      p = p * NuPoly::linear(Rational(1),
                             Rational(static_cast<long>(t)) - Rational(j - 1, 2));
  return p;
}

Rational pochhammer_at(const Rational& nu, uint32_t n, const Signature& m) {
  return pochhammer_poly(n, m).eval(nu);
}

NuPoly gamma_step_up(const Signature& m, uint32_t j) {
  return NuPoly::linear(Rational(1),
                        Rational(static_cast<long>(m[j])) - Rational(j - 1, 2));
}

NuPoly gamma_step_down(const Signature& m, uint32_t j) {
  if (m[j] == 0) throw std::invalid_argument("gamma_step_down: m_j = 0");
  return NuPoly::linear(Rational(1), Rational(static_cast<long>(m[j]) - 1) -
                                         Rational(j - 1, 2));
}

NuSymFunc laguerre_sym(PsiTable& table, const Signature& m) {
  uint32_t n = table.n();
  BinomialTable binom = binomial_coeffs(table, m);
  NuPoly poch_m = pochhammer_poly(n, m);
  NuSymFunc out = NuSymFunc::zero(n);
  for (const auto& [sig, b] : binom.coeff) {
    if (b.is_zero()) continue;
    NuRat c = NuRat(poch_m) / NuRat(pochhammer_poly(n, sig)) * NuRat(b);
    SymFunc psi_neg = table.get(sig).sym.var_scaled(Rational(-1));
    out += lift_to_nu(psi_neg).scaled(c);
  }
  return out;
}

NuEntryPoly laguerre_entry(PsiTable& table, const Signature& m) {
  return powersum_lift(laguerre_sym(table, m));
}

NuExpPoly ell_fn(PsiTable& table, const Signature& m) {
  NuExpPoly f;
  f.c = Rational(1);
  f.p = laguerre_entry(table, m).var_scaled(Rational(2));
  return f;
}

std::vector<Rational> classical_laguerre_coeffs(uint32_t m, const Rational& nu) {
  std::vector<Rational> c(m + 1);
  Rational binom(1);  // C(m, k)
  for (uint32_t k = 0; k <= m; ++k) {
    Rational tail(1);
    for (uint32_t t = k; t < m; ++t) tail *= nu + Rational(static_cast<long>(t));
    c[k] = (k % 2 ? -binom : binom) * tail;
    binom = binom * Rational(static_cast<long>(m - k)) /
            Rational(static_cast<long>(k + 1));
  }
  return c;
}

cplx det_power_pd_real(const CMat& a, double p) {
  size_t n = a.size();
  CMat id = cmat_identity(n);
  for (uint32_t steps = 4; steps <= (1u << 20); steps *= 2) {
    double total_arg = 0.0;
    double log_abs = 0.0;
    cplx prev = cplx(1.0, 0.0);  // det at t = 0
    bool ok = true;
    for (uint32_t i = 1; i <= steps; ++i) {
      double t = static_cast<double>(i) / steps;
      CMat at = cmat_add(cmat_scale(id, 1.0 - t), cmat_scale(a, t));
      cplx d = cmat_det(std::move(at));
      if (d == cplx(0.0, 0.0)) throw std::domain_error("det_power_pd_real: singular");
      double step_arg = std::arg(d / prev);
      if (std::abs(step_arg) >= M_PI / 2) {
        ok = false;
        break;
      }
      total_arg += step_arg;
      if (i == steps) log_abs = std::log(std::abs(d));
      prev = d;
    }
    if (ok) return std::exp(p * cplx(log_abs, total_arg));
  }
  throw std::domain_error("det_power_pd_real: branch tracking did not converge");
}

cplx q_fn_eval(const SphericalPoly& psi, double nu, const CMat& z) {
  uint32_t n = psi.m.n();
  if (z.size() != n) throw std::invalid_argument("q_fn_eval: size");
  CMat id = cmat_identity(n);
  CMat zpe = cmat_add(z, id);
  CMat w = cmat_mul(cmat_sub(z, id), cmat_inverse(zpe));

  // psi_m(w) from the power-sum expansion and traces of powers of w.
  uint32_t maxp = psi.m[1];
  for (const auto& [kappa, c] : psi.sym.powersum())
    for (uint32_t part : kappa) maxp = std::max(maxp, part);
  std::vector<cplx> tr(maxp + 1, cplx(0.0));
  CMat wp = id;
  for (uint32_t k = 1; k <= maxp; ++k) {
    wp = cmat_mul(wp, w);
    tr[k] = cmat_trace(wp);
  }
  cplx val(0.0);
  for (const auto& [kappa, c] : psi.sym.powersum()) {
    cplx term(c.to_double());
    for (uint32_t part : kappa) term *= tr[part];
    val += term;
  }
  return det_power_pd_real(zpe, -nu) * val;
}

cplx kernel_eval(uint32_t n, double nu, const CMat& z, const CMat& w) {
  if (z.size() != n || w.size() != n) throw std::invalid_argument("kernel_eval: size");
  CMat a = cmat_add(z, cmat_conj(w));
  return gamma_omega_scalar(n, nu) * det_power_pd_real(a, -nu);
}

}  // namespace conelab

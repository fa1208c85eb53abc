#include "conelab/cone.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

// Determinant of a k x k matrix of polynomials by Laplace expansion along
// the first row; k stays tiny so this is fine.
EntryPoly poly_det(const std::vector<std::vector<EntryPoly>>& a, uint32_t n) {
  size_t k = a.size();
  if (k == 1) return a[0][0];
  EntryPoly det = EntryPoly::zero(n);
  for (size_t j = 0; j < k; ++j) {
    std::vector<std::vector<EntryPoly>> sub;
    sub.reserve(k - 1);
    for (size_t r = 1; r < k; ++r) {
      std::vector<EntryPoly> row;
      row.reserve(k - 1);
      for (size_t c = 0; c < k; ++c)
        if (c != j) row.push_back(a[r][c]);
      sub.push_back(std::move(row));
    }
    EntryPoly term = a[0][j] * poly_det(sub, n);
    if (j % 2) det -= term;
    else det += term;
  }
  return det;
}

}  // namespace

EntryPoly principal_minor(uint32_t n, uint32_t k) {
  if (k < 1 || k > n) throw std::invalid_argument("principal_minor: k out of range");
  auto x = entry_symbol_matrix<Rational>(n);
  std::vector<std::vector<EntryPoly>> block(k);
  for (uint32_t i = 0; i < k; ++i)
    block[i].assign(x[i].begin(), x[i].begin() + k);
  return poly_det(block, n);
}

EntryPoly delta_power(uint32_t n, const Signature& m) {
  if (m.n() != n) throw std::invalid_argument("delta_power: signature length");
  EntryPoly out = EntryPoly::constant(n, Rational(1));
  for (uint32_t k = 1; k <= n; ++k) {
    uint32_t e = m[k] - (k < n ? m[k + 1] : 0);
    if (e == 0) continue;
    EntryPoly dk = principal_minor(n, k);
    for (uint32_t t = 0; t < e; ++t) out = out * dk;
  }
  return out;
}

double delta_power_eval(const DMat& x, const std::vector<double>& s) {
  size_t n = x.size();
  if (s.size() != n) throw std::invalid_argument("delta_power_eval: exponent length");
  for (size_t i = 1; i < n; ++i)
    if (s[i - 1] < s[i])
      throw std::invalid_argument("delta_power_eval: exponents must be decreasing");
  std::vector<double> minors = leading_minors(x);
  double logv = 0.0;
  for (size_t k = 0; k < n; ++k) {
    double e = s[k] - (k + 1 < n ? s[k + 1] : 0.0);
    if (e == 0.0) continue;
    if (!(minors[k] > 0.0))
      throw std::domain_error("delta_power_eval: nonpositive leading minor");
    logv += e * std::log(minors[k]);
  }
  return std::exp(logv);
}

EigenSym spectral(const DMat& x) { return jacobi_eigen_sym(x); }

DMat sample_haar_so(uint32_t n, RandomStream& rng) {
  DMat g(n, std::vector<double>(n));
  for (uint32_t i = 0; i < n; ++i)
    for (uint32_t j = 0; j < n; ++j) g[i][j] = rng.gaussian();
  // modified Gram-Schmidt on columns, R-diagonal kept positive
  DMat q(n, std::vector<double>(n, 0.0));
  for (uint32_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (uint32_t i = 0; i < n; ++i) v[i] = g[i][j];
    for (uint32_t k = 0; k < j; ++k) {
      double dot = 0.0;
      for (uint32_t i = 0; i < n; ++i) dot += q[i][k] * v[i];
      for (uint32_t i = 0; i < n; ++i) v[i] -= dot * q[i][k];
    }
    double norm = 0.0;
    for (uint32_t i = 0; i < n; ++i) norm += v[i] * v[i];
    norm = std::sqrt(norm);
    if (!(norm > 1e-300)) throw std::runtime_error("sample_haar_so: degenerate draw");
    for (uint32_t i = 0; i < n; ++i) q[i][j] = v[i] / norm;
  }
  if (dmat_det(q) < 0.0)
    for (uint32_t i = 0; i < n; ++i) q[i][n - 1] = -q[i][n - 1];
  return q;
}

DMat sample_cone_density(uint32_t n, double nu, RandomStream& rng) {
  if (!(nu > (n - 1) / 2.0))
    throw std::invalid_argument("sample_cone_density: need nu > (n-1)/2");
  // x = S S^T, S lower triangular: S_ii^2 ~ Gamma(nu - (i-1)/2),
  // S_ij ~ N(0, 1/2) below the diagonal.
  DMat s(n, std::vector<double>(n, 0.0));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (uint32_t i = 0; i < n; ++i) {
    s[i][i] = std::sqrt(rng.gamma(nu - 0.5 * i));
    for (uint32_t j = 0; j < i; ++j) s[i][j] = rng.gaussian() * inv_sqrt2;
  }
  return dmat_mul(s, dmat_transpose(s));
}

}  // namespace conelab

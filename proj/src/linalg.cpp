#include "conelab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conelab {

DMat dmat_identity(size_t n) {
  DMat m(n, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

DMat dmat_mul(const DMat& a, const DMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  DMat r(n, std::vector<double>(p, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      double av = a[i][t];
      if (av == 0.0) continue;
      for (size_t j = 0; j < p; ++j) r[i][j] += av * b[t][j];
    }
  return r;
}

DMat dmat_transpose(const DMat& a) {
  size_t n = a.size(), m = a.empty() ? 0 : a[0].size();
  DMat r(m, std::vector<double>(n, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < m; ++j) r[j][i] = a[i][j];
  return r;
}

double dmat_det(DMat a) {
  size_t n = a.size();
  double det = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (a[p][c] == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      double f = a[r][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

CMat cmat_from_real(const DMat& a) {
  CMat r(a.size());
  for (size_t i = 0; i < a.size(); ++i)
    r[i].assign(a[i].begin(), a[i].end());
  return r;
}

CMat cmat_identity(size_t n) { return cmat_from_real(dmat_identity(n)); }

CMat cmat_add(const CMat& a, const CMat& b) {
  CMat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] += b[i][j];
  return r;
}

CMat cmat_sub(const CMat& a, const CMat& b) {
  CMat r = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a[i].size(); ++j) r[i][j] -= b[i][j];
  return r;
}

CMat cmat_scale(const CMat& a, cplx s) {
  CMat r = a;
  for (auto& row : r)
    for (auto& v : row) v *= s;
  return r;
}

CMat cmat_mul(const CMat& a, const CMat& b) {
  size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  CMat r(n, std::vector<cplx>(p, 0.0));
  for (size_t i = 0; i < n; ++i)
    for (size_t t = 0; t < k; ++t) {
      cplx av = a[i][t];
      if (av == 0.0) continue;
      for (size_t j = 0; j < p; ++j) r[i][j] += av * b[t][j];
    }
  return r;
}

CMat cmat_conj(const CMat& a) {
  CMat r = a;
  for (auto& row : r)
    for (auto& v : row) v = std::conj(v);
  return r;
}

cplx cmat_trace(const CMat& a) {
  cplx t = 0.0;
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

cplx cmat_det(CMat a) {
  size_t n = a.size();
  cplx det = 1.0;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) == 0.0) return 0.0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < n; ++r) {
      cplx f = a[r][c] / a[c][c];
      for (size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

CMat cmat_inverse(CMat a) {
  size_t n = a.size();
  CMat inv = cmat_identity(n);
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    for (size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r][c]) > std::abs(a[p][c])) p = r;
    if (std::abs(a[p][c]) < 1e-300)
      throw std::domain_error("cmat_inverse: singular matrix");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    cplx piv = a[c][c];
    for (size_t j = 0; j < n; ++j) {
      a[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      cplx f = a[r][c];
      if (f == cplx(0.0)) continue;
      for (size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

DMat dmat_from_rational(const std::vector<std::vector<Rational>>& a) {
  DMat r(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    r[i].reserve(a[i].size());
    for (const auto& v : a[i]) r[i].push_back(v.to_double());
  }
  return r;
}

EigenSym jacobi_eigen_sym(DMat x, double tol) {
  size_t n = x.size();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (std::abs(x[i][j] - x[j][i]) >
          1e-12 * std::max({1.0, std::abs(x[i][j]), std::abs(x[j][i])}))
        throw std::invalid_argument("jacobi_eigen_sym: matrix not symmetric");

  DMat v = dmat_identity(n);
  double frob = 0.0;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) frob += x[i][j] * x[i][j];
  frob = std::sqrt(frob);
  double thresh = tol * std::max(frob, 1e-300);

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) off += 2.0 * x[i][j] * x[i][j];
    if (std::sqrt(off) <= thresh) break;
    for (size_t p = 0; p < n; ++p)
      for (size_t q = p + 1; q < n; ++q) {
        if (x[p][q] == 0.0) continue;
        double theta = (x[q][q] - x[p][p]) / (2.0 * x[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (size_t k = 0; k < n; ++k) {
          double xkp = x[k][p], xkq = x[k][q];
          x[k][p] = c * xkp - s * xkq;
          x[k][q] = s * xkp + c * xkq;
        }
        for (size_t k = 0; k < n; ++k) {
          double xpk = x[p][k], xqk = x[q][k];
          x[p][k] = c * xpk - s * xqk;
          x[q][k] = s * xpk + c * xqk;
        }
        for (size_t k = 0; k < n; ++k) {
          double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
  }

  std::vector<size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return x[a][a] > x[b][b]; });
  EigenSym out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n, 0.0));
  for (size_t k = 0; k < n; ++k) {
    out.values[k] = x[idx[k]][idx[k]];
    for (size_t r = 0; r < n; ++r) out.vectors[r][k] = v[r][idx[k]];
  }
  return out;
}

std::vector<double> leading_minors(const DMat& x) {
  size_t n = x.size();
  std::vector<double> out(n);
  for (size_t k = 1; k <= n; ++k) {
    DMat sub(k, std::vector<double>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub[i][j] = x[i][j];
    out[k - 1] = dmat_det(std::move(sub));
  }
  return out;
}

std::vector<Rational> leading_minors_exact(
    const std::vector<std::vector<Rational>>& x) {
  size_t n = x.size();
  std::vector<Rational> out;
  out.reserve(n);
  for (size_t k = 1; k <= n; ++k) {
    // fraction-free expansion is unnecessary at these sizes; cofactor it
    std::vector<std::vector<Rational>> sub(k, std::vector<Rational>(k, 0));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) sub[i][j] = x[i][j];
    // Gaussian elimination over Q
    Rational det(1);
    bool zero = false;
    for (size_t c = 0; c < k && !zero; ++c) {
      size_t p = c;
      while (p < k && sub[p][c].is_zero()) ++p;
      if (p == k) { zero = true; break; }
      if (p != c) { std::swap(sub[p], sub[c]); det = -det; }
      det *= sub[c][c];
      for (size_t r = c + 1; r < k; ++r) {
        if (sub[r][c].is_zero()) continue;
        Rational f = sub[r][c] / sub[c][c];
        for (size_t j = c; j < k; ++j) sub[r][j] -= f * sub[c][j];
      }
    }
    out.push_back(zero ? Rational(0) : det);
  }
  return out;
}

bool is_positive_definite(const DMat& x) {
  for (double m : leading_minors(x))
    if (!(m > 0.0)) return false;
  return true;
}

}  // namespace conelab

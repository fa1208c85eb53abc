#pragma once

#include <complex>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

using cplx = std::complex<double>;
using DMat = std::vector<std::vector<double>>;
using CMat = std::vector<std::vector<cplx>>;

DMat dmat_identity(size_t n);
DMat dmat_mul(const DMat& a, const DMat& b);
DMat dmat_transpose(const DMat& a);
double dmat_det(DMat a);  // LU with partial pivoting

CMat cmat_from_real(const DMat& a);
CMat cmat_identity(size_t n);
CMat cmat_add(const CMat& a, const CMat& b);
CMat cmat_sub(const CMat& a, const CMat& b);
CMat cmat_scale(const CMat& a, cplx s);
CMat cmat_mul(const CMat& a, const CMat& b);
CMat cmat_conj(const CMat& a);
cplx cmat_trace(const CMat& a);
cplx cmat_det(CMat a);
CMat cmat_inverse(CMat a);  // throws on (numerically) singular input

DMat dmat_from_rational(const std::vector<std::vector<Rational>>& a);

struct EigenSym {
  std::vector<double> values;  // descending
  DMat vectors;                // columns; x = V diag(values) V^T
};

// Cyclic Jacobi rotations; iterates until the off-diagonal Frobenius mass
// is below tol * ||x||_F.  Input must be symmetric.
EigenSym jacobi_eigen_sym(DMat x, double tol = 1e-13);

// Leading principal minors det(x[0..k-1, 0..k-1]), k = 1..n.
std::vector<double> leading_minors(const DMat& x);
std::vector<Rational> leading_minors_exact(const std::vector<std::vector<Rational>>& x);

bool is_positive_definite(const DMat& x);

}  // namespace conelab

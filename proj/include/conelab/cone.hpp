#pragma once

#include <vector>

#include "conelab/entry_poly.hpp"
#include "conelab/linalg.hpp"
#include "conelab/partitions.hpp"
#include "conelab/random.hpp"

namespace conelab {

// The cone of positive-definite real symmetric n x n matrices.  Everything
// downstream is parametrized by n alone; rank n, dimension n(n+1)/2.
struct ConeDescriptor {
  uint32_t n;
  explicit ConeDescriptor(uint32_t n_) : n(n_) {
    if (n < 1 || n > 6)
      throw std::invalid_argument("ConeDescriptor: n out of supported range");
  }
  uint32_t dim() const { return n * (n + 1) / 2; }
  uint32_t rank() const { return n; }
};

// Leading principal k x k minor as an exact polynomial in the entries.
EntryPoly principal_minor(uint32_t n, uint32_t k);

// Generalized power Delta_m = prod_k Delta_k^{m_k - m_{k+1}} for an integer
// signature (exact polynomial, homogeneous of degree |m|).
EntryPoly delta_power(uint32_t n, const Signature& m);

// Delta_s(x) for real exponents s_1 >= ... >= s_n via positive leading
// minors; throws if any leading minor is nonpositive.
double delta_power_eval(const DMat& x, const std::vector<double>& s);

// Eigendecomposition of a symmetric matrix (descending eigenvalues).
EigenSym spectral(const DMat& x);

// Haar-distributed rotation from SO(n): Gaussian matrix, Gram-Schmidt with
// the R-diagonal sign correction, final column flip if the determinant is -1.
DMat sample_haar_so(uint32_t n, RandomStream& rng);

// Draw from the normalized density  e^{-tr x} Delta(x)^{nu-(n+1)/2} / Gamma_Omega(nu)
// on the cone (Bartlett-style construction); requires nu > (n-1)/2.
DMat sample_cone_density(uint32_t n, double nu, RandomStream& rng);

}  // namespace conelab

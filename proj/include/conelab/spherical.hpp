#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"
#include "conelab/sym_func.hpp"

namespace conelab {

// Invariant spherical polynomial psi_m: L-invariant, psi_m(e) = 1, and the
// monomial-symmetric support lies dominance-below m.  rho is the eigenvalue
// of the radial operator the construction diagonalizes.
struct SphericalPoly {
  Signature m;
  SymFunc sym;      // carries monomial and power-sum expansions
  EntryPoly entry;  // exact lift back to entry variables
  Rational rho;
};

// Radial operator  sum_i l_i^2 d_i^2 + sum_{i<j} (l_i^2 d_i - l_j^2 d_j)/(l_i - l_j)
// applied to a symmetric polynomial.  The pairwise differences always divide
// exactly for symmetric input; a remainder is an error.
SymFunc radial_apply(const SymFunc& f);

// Maximum |m| the construction accepts; beyond this is a hard error.
constexpr uint32_t kPsiDegreeBound = 12;

// Table of spherical polynomials for one cone, built on demand in degree
// order.  If CONELAB_CACHE_DIR is set, constructed polynomials are persisted
// there and reloaded byte-identically.
class PsiTable {
 public:
  explicit PsiTable(uint32_t n);

  const SphericalPoly& get(const Signature& m);
  void ensure_norm(uint32_t max_norm);
  uint32_t n() const { return n_; }

 private:
  SphericalPoly construct(const Signature& m);
  std::optional<SphericalPoly> load_cached(const Signature& m) const;
  void store_cached(const SphericalPoly& p) const;

  uint32_t n_;
  std::string cache_dir_;  // empty: in-memory only
  std::map<Signature, SphericalPoly> table_;
  std::mutex mu_;
};

// Monte-Carlo average of Delta_m(l x l^T) over Haar rotations, against the
// exact value; z = (estimate - exact) / stderr.
struct OracleResult {
  double estimate = 0.0;
  double stderr_est = 0.0;
  double exact = 0.0;
  double zscore = 0.0;
  uint64_t samples = 0;
};

OracleResult haar_average_oracle(const SphericalPoly& psi,
                                 const std::vector<std::vector<Rational>>& x,
                                 uint64_t samples, uint64_t seed,
                                 uint64_t case_id, uint32_t threads = 1);

// Generalized binomial coefficients: psi_m(e + x) = sum b_{m'} psi_{m'}(x).
struct BinomialTable {
  Signature m;
  std::map<Signature, Rational> coeff;  // all |m'| <= |m| present (maybe 0)
};

BinomialTable binomial_coeffs(PsiTable& table, const Signature& m);

}  // namespace conelab

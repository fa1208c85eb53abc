#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "conelab/partitions.hpp"
#include "conelab/rational.hpp"

namespace conelab {

// A verification run serialized as a deterministic JSON document (sorted
// keys, no timing data, values independent of the thread count).
struct SuiteReport {
  bool pass = false;
  uint64_t total = 0;
  uint64_t failed = 0;
  std::string json;
};

// Ladder/eigenvalue expansions of the relation operators over the Laguerre
// family, every signature of norm <= max_norm, relations 1..3.  nu empty
// means fully symbolic coefficients.
SuiteReport suite_recursion(uint32_t n, const std::optional<Rational>& nu,
                            uint32_t max_norm, uint32_t threads);

// Rank-one reduction: coefficient identity against the classical closed form
// (exact in the parameter) plus pointwise numeric evaluation.
SuiteReport suite_classical(uint32_t max_degree, const Rational& nu_numeric);

// Laplace transform of ell_m at scalar points s * id against the closed
// form Gamma_Omega(m + nu) (1+s)^{-n nu} ((s-1)/(s+1))^{|m|}.
SuiteReport suite_laplace(uint32_t n, const Rational& nu, const Signature& m,
                          const std::vector<double>& svals, uint32_t nodes = 48);

// Transform intertwining for a random algebra element of the requested kind
// ("kC", "pPlus", "pMinus", or "all") at fixed tube points.
SuiteReport suite_intertwine(uint32_t n, const Rational& nu, const Signature& m,
                             const std::string& which, uint64_t seed,
                             uint32_t nodes = 48);

// Fixed cross-module bundle used by `verify all`; byte-identical output for
// any thread count.
SuiteReport suite_all(uint64_t seed, uint32_t threads);

}  // namespace conelab

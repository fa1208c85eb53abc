#pragma once

#include <stdexcept>
#include <vector>

namespace conelab {

// Exact Gaussian elimination over a field K.  The system may be
// overdetermined but must be consistent with full column rank; anything else
// throws.  Used for basis conversions and expansion solves, all of which are
// mathematically unique when the inputs are valid.
template <class K>
std::vector<K> linear_solve(std::vector<std::vector<K>> a, std::vector<K> b) {
  size_t rows = a.size();
  size_t cols = rows ? a[0].size() : 0;
  if (b.size() != rows) throw std::invalid_argument("linear_solve: shape");
  std::vector<size_t> pivot_row(cols);
  size_t rank = 0;
  for (size_t c = 0; c < cols; ++c) {
    size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) throw std::domain_error("linear_solve: rank deficient");
    std::swap(a[p], a[rank]);
    std::swap(b[p], b[rank]);
    K inv = K(1) / a[rank][c];
    for (size_t j = c; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
    b[rank] = b[rank] * inv;
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c].is_zero()) continue;
      K f = a[r][c];
      for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] - f * a[rank][j];
      b[r] = b[r] - f * b[rank];
    }
    pivot_row[c] = rank;
    ++rank;
  }
  for (size_t r = rank; r < rows; ++r)
    if (!b[r].is_zero()) throw std::domain_error("linear_solve: inconsistent");
  std::vector<K> x(cols, K(0));
  for (size_t c = 0; c < cols; ++c) x[c] = b[pivot_row[c]];
  return x;
}

}  // namespace conelab

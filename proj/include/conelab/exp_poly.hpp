#pragma once

#include <string>

#include "conelab/entry_poly.hpp"

namespace conelab {

// exp(-c * tr x) * p(x) with rational c >= 0.  The Laguerre functions live
// here with c = 1, and every operator in the toolkit preserves c.
template <class K>
struct ExpPolyT {
  Rational c{1};
  EntryPolyT<K> p;

  ExpPolyT() = default;
  ExpPolyT(Rational c_, EntryPolyT<K> p_) : c(std::move(c_)), p(std::move(p_)) {}

  uint32_t n() const { return p.n(); }
  bool is_zero() const { return p.is_zero(); }

  friend bool operator==(const ExpPolyT& a, const ExpPolyT& b) {
    if (a.p.is_zero() && b.p.is_zero()) return true;  // c irrelevant at zero
    return a.c == b.c && a.p == b.p;
  }
  friend bool operator!=(const ExpPolyT& a, const ExpPolyT& b) { return !(a == b); }

  ExpPolyT scaled(const K& s) const { return {c, p.scaled(s)}; }

  std::string to_string() const {
    std::string head;
    if (c == Rational(1)) head = "exp(-tr x)";
    else if (!c.is_zero()) head = "exp(-" + c.to_string() + "*tr x)";
    if (head.empty()) return p.to_string();
    return head + " * (" + p.to_string() + ")";
  }
};

using ExpPoly = ExpPolyT<Rational>;
using NuExpPoly = ExpPolyT<NuRat>;

}  // namespace conelab

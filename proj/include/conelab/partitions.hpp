#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace conelab {

// Partition: weakly decreasing positive parts, no trailing zeros.
// The empty partition is the constant / degree-0 key.
using Partition = std::vector<uint32_t>;

inline uint32_t part_weight(const Partition& p) {
  return std::accumulate(p.begin(), p.end(), 0u);
}

inline std::string partition_to_string(const Partition& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

// Total order used for canonical printing and map iteration: higher degree
// first, then lexicographically larger part vector first ([2] before [1,1]).
struct PartGreater {
  bool operator()(const Partition& a, const Partition& b) const {
    uint32_t wa = part_weight(a), wb = part_weight(b);
    if (wa != wb) return wa > wb;
    return a > b;
  }
};

// Dominance: same weight and all prefix sums of a bounded by those of b.
inline bool dominated_by(const Partition& a, const Partition& b) {
  if (part_weight(a) != part_weight(b)) return false;
  uint32_t sa = 0, sb = 0;
  size_t k = std::max(a.size(), b.size());
  for (size_t i = 0; i < k; ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

// All partitions of weight w with at most max_parts parts.
inline void partitions_of(uint32_t w, uint32_t max_parts,
                          std::vector<Partition>& out) {
  Partition cur;
  auto rec = [&](auto&& self, uint32_t rem, uint32_t maxpart, uint32_t slots) -> void {
    if (rem == 0) { out.push_back(cur); return; }
    if (slots == 0) return;
    for (uint32_t p = std::min(rem, maxpart); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p, slots - 1);
      cur.pop_back();
    }
  };
  rec(rec, w, w == 0 ? 1 : w, max_parts);
}

inline std::vector<Partition> partitions_max_parts(uint32_t w, uint32_t max_parts) {
  std::vector<Partition> out;
  partitions_of(w, max_parts, out);
  return out;
}

// All partitions of weight w with every part <= max_part (any number of parts).
inline std::vector<Partition> partitions_max_part(uint32_t w, uint32_t max_part) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, uint32_t rem, uint32_t cap) -> void {
    if (rem == 0) { out.push_back(cur); return; }
    for (uint32_t p = std::min(rem, cap); p >= 1; --p) {
      cur.push_back(p);
      self(self, rem - p, p);
      cur.pop_back();
    }
  };
  rec(rec, w, max_part);
  return out;
}

// Distinct permutations of the partition padded with zeros to length n.
inline std::vector<std::vector<uint32_t>> distinct_permutations(const Partition& p,
                                                                uint32_t n) {
  if (p.size() > n)
    throw std::invalid_argument("distinct_permutations: partition longer than n");
  std::vector<uint32_t> v(n, 0);
  std::copy(p.begin(), p.end(), v.begin());
  std::sort(v.begin(), v.end());
  std::vector<std::vector<uint32_t>> out;
  do {
    out.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// Signature: weakly decreasing nonnegative integer vector of fixed length n.
// Indexing in formulas is 1-based (m_1 >= m_2 >= ... >= m_n >= 0).
class Signature {
 public:
  Signature() = default;
  Signature(std::vector<uint32_t> parts) : parts_(std::move(parts)) {  // NOLINT
    for (size_t i = 1; i < parts_.size(); ++i)
      if (parts_[i - 1] < parts_[i])
        throw std::invalid_argument("Signature: parts must be weakly decreasing");
  }
  static Signature zero(uint32_t n) { return Signature(std::vector<uint32_t>(n, 0)); }

  // Parses "2,1,0"; every part must be present (length fixes n).
  static Signature parse(const std::string& s) {
    std::vector<uint32_t> parts;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t comma = s.find(',', pos);
      std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("Signature: cannot parse '" + s + "'");
      parts.push_back(static_cast<uint32_t>(std::stoul(tok)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return Signature(std::move(parts));
  }

  uint32_t n() const { return static_cast<uint32_t>(parts_.size()); }
  uint32_t operator[](uint32_t j1) const {  // 1-based
    if (j1 < 1 || j1 > n()) throw std::out_of_range("Signature: index");
    return parts_[j1 - 1];
  }
  const std::vector<uint32_t>& parts() const { return parts_; }
  uint32_t norm() const { return std::accumulate(parts_.begin(), parts_.end(), 0u); }

  Partition partition() const {
    Partition p = parts_;
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
  }

  bool can_add(uint32_t j1) const {
    return j1 >= 1 && j1 <= n() && (j1 == 1 || parts_[j1 - 2] > parts_[j1 - 1]);
  }
  bool can_sub(uint32_t j1) const {
    if (j1 < 1 || j1 > n() || parts_[j1 - 1] == 0) return false;
    return j1 == n() || parts_[j1 - 1] > parts_[j1];
  }
  Signature add_e(uint32_t j1) const {
    if (!can_add(j1)) throw std::invalid_argument("Signature: m+e_j not valid");
    Signature r = *this;
    ++r.parts_[j1 - 1];
    return r;
  }
  Signature sub_e(uint32_t j1) const {
    if (!can_sub(j1)) throw std::invalid_argument("Signature: m-e_j not valid");
    Signature r = *this;
    --r.parts_[j1 - 1];
    return r;
  }

  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Signature& a, const Signature& b) {
    return a.parts_ == b.parts_;
  }
  friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
  // Degree ascending, then lex ascending: the order tables are listed in.
  friend bool operator<(const Signature& a, const Signature& b) {
    uint32_t wa = a.norm(), wb = b.norm();
    if (wa != wb) return wa < wb;
    return a.parts_ < b.parts_;
  }

 private:
  std::vector<uint32_t> parts_;
};

// All signatures of length n with norm <= max_norm, ordered by (degree, lex)
// ascending so tables list low degrees first.
inline std::vector<Signature> signatures_up_to(uint32_t n, int max_norm) {
  std::vector<Signature> out;
  if (max_norm < 0) return out;
  for (uint32_t w = 0; w <= static_cast<uint32_t>(max_norm); ++w) {
    std::vector<Partition> parts = partitions_max_parts(w, n);
    std::sort(parts.begin(), parts.end());  // lex ascending within a degree
    for (const auto& p : parts) {
      std::vector<uint32_t> v(n, 0);
      std::copy(p.begin(), p.end(), v.begin());
      out.emplace_back(std::move(v));
    }
  }
  return out;
}

}  // namespace conelab

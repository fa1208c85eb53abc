#include "conelab/random.hpp"

#include <cmath>
#include <stdexcept>

namespace conelab {

namespace {

inline uint64_t splitmix64(uint64_t& s) {
  uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t fnv1a(std::string_view s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

RandomStream::RandomStream(uint64_t seed, std::string_view purpose, uint64_t case_id) {
  uint64_t s = seed;
  uint64_t a = splitmix64(s);
  s ^= fnv1a(purpose);
  uint64_t b = splitmix64(s);
  s ^= case_id * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL;
  uint64_t c = splitmix64(s);
  key_ = a ^ (b + (c << 1));
  state_ = key_;
}

RandomStream RandomStream::substream(uint64_t index) const {
  uint64_t s = key_ ^ (index * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL);
  return RandomStream(splitmix64(s));
}

uint64_t RandomStream::next_u64() { return splitmix64(state_); }

double RandomStream::uniform01() {
  // 53-bit mantissa, strictly inside (0,1)
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform01(), u2 = uniform01();
  double r = std::sqrt(-2.0 * std::log(u1));
  double t = 2.0 * M_PI * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

double RandomStream::gamma(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("gamma: alpha must be > 0");
  if (alpha < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) * U^{1/a}
    double u = uniform01();
    return gamma(alpha + 1.0) * std::pow(u, 1.0 / alpha);
  }
  // Marsaglia-Tsang squeeze
  double d = alpha - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = gaussian();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    double u = uniform01();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace conelab

#pragma once

#include <cstdint>
#include <string_view>

namespace conelab {

// Deterministic keyed random stream.  The state is derived from
// (seed, purpose, case_id) alone, so any case draws the same sequence no
// matter which thread runs it or in what order cases are scheduled.
class RandomStream {
 public:
  RandomStream(uint64_t seed, std::string_view purpose, uint64_t case_id = 0);

  // Child stream for a labelled batch; independent of draws made so far.
  RandomStream substream(uint64_t index) const;

  uint64_t next_u64();
  double uniform01();            // in (0, 1)
  double gaussian();             // standard normal, Box-Muller
  double gamma(double alpha);    // Gamma(alpha, 1), alpha > 0

 private:
  explicit RandomStream(uint64_t state) : key_(state), state_(state) {}
  uint64_t key_;    // fixed at construction; substreams derive from this
  uint64_t state_;  // advances with each draw
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace conelab

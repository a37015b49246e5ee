#pragma once

#include <cstdint>
#include <random>

#include "gconv/rational.hpp"

namespace gconv {

/// Seeded generator; split() derives an independent child stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);
  Integer uniform(const Integer& lo, const Integer& hi);
  bool coin(double p = 0.5);
  Rng split();
  Rng split(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace gconv

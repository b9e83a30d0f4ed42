#pragma once

#include <cstdint>
#include <random>

#include "bethe_overlap/kernels.hpp"

namespace bethe_overlap {

/// Seeded generator for test instances: std::mt19937_64 with unbiased
/// rejection sampling of integer ranges, so draws are reproducible across
/// standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [lo, hi].
  long uniform(long lo, long hi);

  /// p/q with p in [-10^4, 10^4], q in [1, 100]; imaginary part likewise when `complex`.
  Scalar rational(const Scalar& like, bool complex = false);
  /// `n` draws pairwise apart, rejecting any x with x - a in {0, c, -c}
  /// for a in `avoid` or an earlier draw.
  ParamSet set(std::size_t n, const Scalar& like, const ModelConstant& c, const ParamSet& avoid = {},
               bool complex = false, std::string label = {});

 private:
  std::mt19937_64 engine_;
};

}  // namespace bethe_overlap

#pragma once

#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>

namespace eqcenter {

/// Stable identity of a point within one instance; indices are 0..n-1 with
/// no gaps. All tie-breaking in this library resolves to the lowest index.
using PointId = std::size_t;

inline constexpr PointId kNoPoint = std::numeric_limits<PointId>::max();

/// Deterministic RNG wrapper. mt19937_64 has a standardized output sequence,
/// and the derived draws below avoid std::uniform_*_distribution (whose
/// output is implementation-defined), so results are reproducible across
/// platforms, not just across runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw from [0, 1) with 53 bits of randomness.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform draw from [0, hi).
  double uniform(double hi) { return uniform01() * hi; }

  /// Uniform integer from {0, ..., n-1} via rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t draw = engine_();
    while (draw >= limit) draw = engine_();
    return draw % n;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// Formats a double with 17 significant digits (lossless round-trip),
/// with infinities rendered as "inf"/"-inf".
inline std::string format_double17(double v) {
  if (v == std::numeric_limits<double>::infinity()) return "inf";
  if (v == -std::numeric_limits<double>::infinity()) return "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace eqcenter

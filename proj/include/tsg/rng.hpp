#pragma once

#include "tsg/rational.hpp"

#include <cstdint>
#include <string_view>

namespace tsg {

// Splittable counter-based generator (splitmix64 core). Children derived by
// label never collide with the parent stream, so experiment sections can draw
// independently while staying byte-reproducible from one config seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ^ 0x9e3779b97f4a7c15ULL) {}

  Rng split(std::string_view label) const;
  Rng split(std::uint64_t salt) const;

  std::uint64_t next_u64();

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [lo, hi] inclusive.
  std::int64_t next_int(std::int64_t lo, std::int64_t hi);

  bool next_bool() { return (next_u64() & 1) != 0; }

  double next_signed_unit() { return next_bool() ? next_unit() : -next_unit(); }

  // Nonzero rational with numerator in [-max_num, max_num], denominator in
  // [1, max_den].
  Rational next_rational(std::int64_t max_num, std::int64_t max_den);

 private:
  std::uint64_t state_;
};

}  // namespace tsg

#pragma once

#include <cstdint>
#include <random>

namespace smaa_choquet {

/// Seeded random source. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the derived uniform, normal and
/// integer draws are computed here (not by <random> distributions, whose
/// algorithms vary between standard libraries), so a seed reproduces the
/// same stream everywhere.
class Rng {
 public:
  static constexpr const char* kIdentity =
      "std::mt19937_64; uniform = (u64 >> 11) * 2^-53; normal = Box-Muller; "
      "integers = bounded rejection";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform();
  /// Standard normal.
  double normal();
  /// Uniform on the integers {lo, ..., hi}; requires lo <= hi.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

/// Substream seed for worker `index` of a run seeded with `seed`.
constexpr std::uint64_t worker_seed(std::uint64_t seed, std::uint64_t index) {
  return seed + index;
}

}  // namespace smaa_choquet

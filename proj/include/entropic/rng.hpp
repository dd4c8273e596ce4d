#pragma once

#include <cstdint>
#include <random>

namespace entropic {

/// Seedable random source addressed by (seed, stream).
///
/// Draw sequences depend only on (seed, stream): the engine is mt19937_64
/// seeded through std::seed_seq, and the uniform/normal transforms are
/// implemented here rather than taken from <random> distributions, whose
/// output is implementation-defined.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

  /// Independent generator for sub-task `index` of this stream.
  SeededRng substream(std::uint64_t index) const;

  std::uint64_t next_u64() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal (Marsaglia polar method).
  double normal();
  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace entropic

#pragma once

#include <cstdint>
#include <limits>

namespace irtr {

/// SplitMix64 generator. Streams are keyed by (master seed, stream index), so
/// sample k of a sweep draws the same numbers regardless of how the sweep is
/// split across workers.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t seed, std::uint64_t stream_index = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on (0, 1) from the top 53 bits.
  double uniform();
  /// Standard normal by the Box-Muller transform; draws come in pairs and the
  /// second of each pair is returned by the next call.
  double normal();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_index_; }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_index_;
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

}  // namespace irtr

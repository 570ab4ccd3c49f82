#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace streamcolor {

/// SplitMix64 finalizer. Used to derive independent child seeds.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Child seed for stream `stream_id` of `master`:
///   mix64(master ^ mix64(stream_id + 0x9e3779b97f4a7c15)).
/// Every randomized component takes its seed from here, so a run is
/// reproducible from the header seed alone.
std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream_id) noexcept;

/// mt19937_64 with platform-independent bounded draws (the standard
/// distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound > 0. Rejection sampling on the top range.
  std::uint64_t below(std::uint64_t bound);

  bool coin() { return (engine_() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(items[i - 1], items[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace streamcolor

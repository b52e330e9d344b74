#pragma once

#include <cstdint>
#include <random>

namespace tmconv {

/// 64-bit finalizing mix (splitmix64). Used to turn (base seed, stream
/// index) pairs into well-separated engine seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for an independent stream, stable in (base_seed, stream_index).
/// Trial i of a run therefore sees the same random stream no matter how
/// trials are scheduled across threads.
constexpr std::uint64_t derive_stream_seed(std::uint64_t base_seed,
                                           std::uint64_t stream_index) noexcept {
  return splitmix64(base_seed + 0x9e3779b97f4a7c15ULL * (stream_index + 1));
}

/// Deterministic uniform random source. Wraps std::mt19937_64, whose
/// output sequence is fixed by the standard, and converts to doubles with
/// explicit bit arithmetic, so equal seeds give byte-identical results on
/// every platform.
class rng_stream {
public:
  explicit rng_stream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1) carrying 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) for n >= 1 (fixed-point multiply; the
  /// bias of ~n/2^32 is negligible for the state counts used here).
  std::uint32_t below(std::uint32_t n) {
    return static_cast<std::uint32_t>(((engine_() >> 32) * static_cast<std::uint64_t>(n)) >> 32);
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace tmconv

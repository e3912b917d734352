#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace narrarl {

// Every run derives its component seeds from one root seed so that grid
// generation, Q-table initialization, and action sampling are independently
// reproducible streams. The canonical stream labels:
inline constexpr std::string_view kGridStream = "grid-gen";
inline constexpr std::string_view kQInitStream = "q-init";
inline constexpr std::string_view kActionStream = "action-sampling";

/// One step of the splitmix64 sequence; advances `state` and returns the
/// mixed output.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Derives a child seed from a root seed and a stream label.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label) {
  std::uint64_t h = 14695981039346656037ull;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  std::uint64_t state = root ^ h;
  return splitmix64(state);
}

/// Derives a child seed from a root seed and an index (used for per-attempt
/// and per-seed fans, e.g. grid regeneration).
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
  std::uint64_t state = root ^ (0x2545f4914f6cdd1dull * (index + 1));
  return splitmix64(state);
}

/// Deterministic random stream with explicit, portable sampling helpers.
/// Distribution code is written out here (instead of <random> distributions)
/// so a seed reproduces the same draws on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, bound); unbiased via rejection sampling.
  std::uint32_t next_below(std::uint32_t bound) {
    const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
    const std::uint64_t limit = max - max % bound;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return static_cast<std::uint32_t>(v % bound);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace narrarl

#pragma once

// Deterministic random source.  mt19937_64 supplies the raw bits (its output
// sequence is fixed by the standard), while the uniform and normal transforms
// are written out here because the library distributions are not guaranteed to
// be bit-identical across implementations.  Seeds for independent streams are
// derived with splitmix64 so that repetitions can be evaluated in any order.

#include <cmath>
#include <cstdint>
#include <random>

namespace nli::rng {

/// splitmix64 finalizer: full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// One splitmix64 step: advances the state and returns a well-mixed word.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  return mix64(state += 0x9e3779b97f4a7c15ull);
}

/// Seed for an independent child stream of a root seed.  The root is mixed
/// to full avalanche before the stream index enters, so distinct (root,
/// stream) pairs cannot collide by linear shifts of either argument.
inline std::uint64_t child_seed(std::uint64_t root, std::uint64_t stream) {
  std::uint64_t s = mix64(root + 0x9e3779b97f4a7c15ull);
  s = mix64(s ^ (stream + 0x632be59bd9b4e019ull));
  return mix64(s + 0x9e3779b97f4a7c15ull);
}

/// Deterministic generator with portable uniform and normal transforms.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (the spare draw is cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]: keeps the log finite
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.14159265358979323846 * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  /// Integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // multiply-shift rejection-free mapping is fine at these sample counts
    return static_cast<std::uint64_t>(uniform() * static_cast<double>(n));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace nli::rng

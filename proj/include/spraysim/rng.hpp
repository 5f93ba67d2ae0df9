#pragma once

#include <cstdint>
#include <random>

namespace spraysim {

// Derives an independent stream seed from up to three inputs (splitmix64
// finalizer). Every randomized subsystem gets its own mixed seed so that
// reordering one stream never perturbs another.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t x = a * 0x9E3779B97F4A7C15ull;
  x += b * 0xBF58476D1CE4E5B9ull;
  x += c * 0x94D049BB133111EBull;
  x += 0x2545F4914F6CDD1Dull;
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

// Seeded random source with distributions implemented in-repo so that a
// fixed seed reproduces the same stream on any platform/stdlib. Simulation
// determinism is a tested contract; std:: distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Inclusive integer range.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
  }

  // Standard normal via Box-Muller; second variate cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Zero std consumes no engine state, so disabling one noise term leaves
  // the other streams untouched.
  double gaussian(double std_dev) { return std_dev > 0.0 ? std_dev * gaussian() : 0.0; }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace spraysim

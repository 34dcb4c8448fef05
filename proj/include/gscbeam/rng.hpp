#ifndef GSCBEAM_RNG_HPP
#define GSCBEAM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>

#include "gscbeam/types.hpp"

namespace gscbeam {

// Seeded random source owned by a single run. The distribution transforms
// are spelled out here instead of using <random> distributions, so that a
// given seed replays the exact same sequence on any standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // uniform on [0, 1)
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double rademacher() { return uniform01() < 0.5 ? 1.0 : -1.0; }

  // two independent N(0,1) draws (Box-Muller)
  std::pair<double, double> gaussian_pair() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * kPi * u2), r * std::sin(2.0 * kPi * u2)};
  }

  // circular complex Gaussian with the given total variance
  // (real and imaginary parts each carry half of it)
  cplx circular_gaussian(double variance) {
    const auto [g1, g2] = gaussian_pair();
    const double s = std::sqrt(0.5 * variance);
    return {s * g1, s * g2};
  }

 private:
  std::mt19937_64 gen_;
};

// splitmix64-style mixing for deterministic seed derivation
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> tags);

// stream tags for per-purpose seed derivation from one master seed
namespace seed_tags {
inline constexpr std::uint64_t kScenario = 0x5ce0;
inline constexpr std::uint64_t kData = 0xda7a;
inline constexpr std::uint64_t kInit = 0x1417;
inline constexpr std::uint64_t kCalibration = 0xca1b;
}  // namespace seed_tags

}  // namespace gscbeam

#endif

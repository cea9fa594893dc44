#ifndef SL_RNG_HPP
#define SL_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace sl {

using Rng = std::mt19937_64;

inline double draw_uniform(Rng& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline double draw_normal(Rng& rng) {
  return std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Centralized fills so that fresh-variate and block-refresh paths consume
// the rng stream in the same order.
inline void fill_uniforms(Rng& rng, std::span<double> out) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (double& x : out) x = u(rng);
}

inline void fill_normals(Rng& rng, std::span<double> out) {
  // One fresh distribution per element: normal_distribution caches a spare
  // variate, which would make refresh order depend on call batching.
  for (double& x : out) x = std::normal_distribution<double>(0.0, 1.0)(rng);
}

// Derive a stream seed for simulation replicate j (splitmix64 mixing).
inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t j) {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (j + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Standard normal quantile, Wichura's AS 241 (PPND16).
double normal_quantile(double p);

// Standard normal cdf.
inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace sl

#endif

#ifndef ISOPART_MONTE_CARLO_HPP_
#define ISOPART_MONTE_CARLO_HPP_

/*!
 * \file
 * \brief Seeded Monte-Carlo volume of the intersection of two unit balls.
 *
 * Random numbers come from the SplitMix64 finaliser applied to a counter,
 * so sample i, coordinate j depends only on (seed, i, j). Work is split
 * into fixed chunks and only integer hit counts are reduced, which makes
 * the estimate identical for any thread count.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <thread>
#include <vector>

#include "isopart/errors.hpp"

namespace isopart {

/// Counter-based uniform generator on [0, 1).
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  [[nodiscard]] constexpr std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  [[nodiscard]] constexpr double uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
};

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t hits = 0;
};

/// Volume of B_1(c e_D) ∩ B_1(-c e_D) with c = center_distance / 2, by
/// uniform sampling of the tight bounding box of the intersection.
template <int D>
MonteCarloEstimate ball_overlap_volume(double center_distance,
                                       std::uint64_t samples,
                                       std::uint64_t seed,
                                       unsigned threads = 0) {
  static_assert(D >= 1);
  detail::require(center_distance >= 0.0 && center_distance < 2.0,
                  "ball_overlap_volume: centers must be closer than 2");
  detail::require(samples > 0, "ball_overlap_volume: need samples");

  const double c = center_distance / 2.0;
  const double axial = 1.0 - c;                 // half-extent along e_D
  const double radial = std::sqrt(1.0 - c * c);  // half-extent across
  double box = 2.0 * axial;
  for (int j = 0; j + 1 < D; ++j) box *= 2.0 * radial;

  const CounterRng rng(seed);
  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::uint64_t base = i * D;
      double transverse = 0.0;
      for (int j = 0; j + 1 < D; ++j) {
        const double t = radial * (2.0 * rng.uniform(base + j) - 1.0);
        transverse += t * t;
      }
      const double z = axial * (2.0 * rng.uniform(base + D - 1) - 1.0);
      const double up = z - c;
      const double down = z + c;
      if (transverse + up * up < 1.0 && transverse + down * down < 1.0) ++hits;
    }
    return hits;
  };

  constexpr std::uint64_t chunk = 1u << 16;
  const std::uint64_t chunks = (samples + chunk - 1) / chunk;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  std::vector<std::uint64_t> per_chunk(chunks, 0);
  auto worker = [&](unsigned w) {
    for (std::uint64_t k = w; k < chunks; k += threads) {
      per_chunk[k] = count_range(k * chunk, std::min(samples, (k + 1) * chunk));
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  }

  MonteCarloEstimate est;
  est.samples = samples;
  for (auto h : per_chunk) est.hits += h;
  const double n = static_cast<double>(samples);
  const double p = static_cast<double>(est.hits) / n;
  est.value = box * p;
  est.standard_error = box * std::sqrt(p * (1.0 - p) / n);
  return est;
}

/// Monte-Carlo oracle for the volume of the lens B_1(e_8/2) ∩ B_1(-e_8/2).
inline MonteCarloEstimate oracle_lens_volume(std::uint64_t samples,
                                             std::uint64_t seed,
                                             unsigned threads = 0) {
  detail::require(samples >= 10'000,
                  "oracle_lens_volume: at least 1e4 samples required");
  return ball_overlap_volume<8>(1.0, samples, seed, threads);
}

}  // namespace isopart

#endif  // ISOPART_MONTE_CARLO_HPP_

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "skg/common/rng.hpp"

namespace skg::netsci {

struct PowerLawFit {
  double alpha = 0.0;
  std::uint64_t x_min = 1;
  double ks = 0.0;
  double p_value = 0.0;  // NaN when the bootstrap was not run
  std::size_t n_tail = 0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  std::size_t replicates = 0;
};

struct PowerLawOptions {
  std::size_t replicates = 1000;
  std::uint64_t seed = 42;
  bool bootstrap = true;
  std::size_t min_observations = 50;
  std::size_t threads = 0;  // 0: hardware concurrency
};

/// Value/count pairs of a sample, ascending by value.
struct Histogram {
  std::vector<std::uint64_t> values;
  std::vector<double> counts;
  double total = 0.0;

  static Histogram of(std::span<const std::uint64_t> data);
};

/// Discrete (Hurwitz-zeta normalised) MLE of alpha for the tail x >= x_min.
double fit_alpha(const Histogram& h, std::size_t first, std::uint64_t x_min);

/// Largest gap between the empirical and the fitted tail CDF, taken over
/// every integer x >= x_min.
double ks_distance(const Histogram& h, std::size_t first, double alpha, std::uint64_t x_min);

/// Scans every distinct value whose tail still holds two distinct values
/// as x_min, keeping the one with the smallest KS distance. No bootstrap.
PowerLawFit fit_tail(const Histogram& h);

/// Full fit: fit_tail plus the semi-parametric bootstrap p-value, with
/// replicate r drawing from mix_seed(seed, r). Throws on fewer than
/// min_observations values, a zero value, or an all-equal sample.
PowerLawFit fit_power_law(std::span<const std::uint64_t> data, const PowerLawOptions& options = {});

/// Inverse-CDF sampler for the discrete power law on x >= x_min.
class PowerLawSampler {
 public:
  PowerLawSampler(double alpha, std::uint64_t x_min);
  std::uint64_t operator()(Rng& rng) const;

 private:
  std::uint64_t invert(double u) const;

  double alpha_;
  std::uint64_t x_min_;
  double zeta_min_;
  std::vector<double> survival_;  // survival_[k] = P(X >= x_min + k)
};

}  // namespace skg::netsci

#include "skg/netsci/power_law.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <algorithm>
#include <atomic>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <map>
#include <thread>

#include "skg/common/error.hpp"

namespace skg::netsci {
namespace {

constexpr double kAlphaLo = 1.0 + 1e-6;
constexpr double kAlphaHi = 50.0;
constexpr std::size_t kTableSize = 1 << 16;
// Below this gap, walking the zeta sum term by term beats a fresh call.
constexpr std::uint64_t kDirectSumGap = 64;

double hzeta(double s, double q) {
  gsl_sf_result r;
  const int status = gsl_sf_hzeta_e(s, q, &r);
  if (status != GSL_SUCCESS) return std::numeric_limits<double>::quiet_NaN();
  return r.val;
}

struct GslQuiet {
  GslQuiet() { gsl_set_error_handler_off(); }
};
const GslQuiet kQuiet;

}  // namespace

Histogram Histogram::of(std::span<const std::uint64_t> data) {
  std::map<std::uint64_t, double> counts;
  for (const auto v : data) counts[v] += 1.0;
  Histogram h;
  for (const auto& [v, c] : counts) {
    h.values.push_back(v);
    h.counts.push_back(c);
    h.total += c;
  }
  return h;
}

double fit_alpha(const Histogram& h, std::size_t first, std::uint64_t x_min) {
  double n = 0.0;
  double sum_log = 0.0;
  for (std::size_t i = first; i < h.values.size(); ++i) {
    n += h.counts[i];
    sum_log += h.counts[i] * std::log(static_cast<double>(h.values[i]));
  }
  const double q = static_cast<double>(x_min);
  const auto nll = [&](double a) {
    const double z = hzeta(a, q);
    if (!(z > 0.0) || !std::isfinite(z)) return std::numeric_limits<double>::max();
    return n * std::log(z) + a * sum_log;
  };
  return boost::math::tools::brent_find_minima(nll, kAlphaLo, kAlphaHi, 40).first;
}

double ks_distance(const Histogram& h, std::size_t first, double alpha, std::uint64_t x_min) {
  double n = 0.0;
  for (std::size_t i = first; i < h.counts.size(); ++i) n += h.counts[i];
  const double z_min = hzeta(alpha, static_cast<double>(x_min));
  // zeta(alpha, x) tracked while x walks up the distinct values.
  std::uint64_t x = x_min;
  double z = z_min;
  const auto advance_to = [&](std::uint64_t target) {
    if (target - x <= kDirectSumGap) {
      for (; x < target; ++x) z -= std::pow(static_cast<double>(x), -alpha);
    } else {
      x = target;
      z = hzeta(alpha, static_cast<double>(x));
    }
  };
  double below = 0.0;  // empirical mass strictly below the current value
  double d = 0.0;
  for (std::size_t i = first; i < h.values.size(); ++i) {
    const std::uint64_t v = h.values[i];
    // Just before v: empirical CDF is below / n, model CDF is P(X <= v-1).
    advance_to(v);
    const double fit_before = 1.0 - z / z_min;
    d = std::max(d, std::abs(below / n - fit_before));
    below += h.counts[i];
    const double fit_at = 1.0 - (z - std::pow(static_cast<double>(v), -alpha)) / z_min;
    d = std::max(d, std::abs(below / n - fit_at));
  }
  return d;
}

PowerLawFit fit_tail(const Histogram& h) {
  if (h.values.size() < 2) throw Error("fit_power_law: sample has a single distinct value");
  PowerLawFit best;
  best.ks = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < h.values.size(); ++i) {
    const std::uint64_t x_min = h.values[i];
    const double alpha = fit_alpha(h, i, x_min);
    const double ks = ks_distance(h, i, alpha, x_min);
    if (ks < best.ks) {
      best.ks = ks;
      best.alpha = alpha;
      best.x_min = x_min;
      best.n_tail = 0;
      for (std::size_t j = i; j < h.counts.size(); ++j) best.n_tail += static_cast<std::size_t>(h.counts[j]);
    }
  }
  best.n = static_cast<std::size_t>(h.total);
  best.p_value = std::numeric_limits<double>::quiet_NaN();
  return best;
}

PowerLawSampler::PowerLawSampler(double alpha, std::uint64_t x_min)
    : alpha_(alpha), x_min_(x_min), zeta_min_(hzeta(alpha, static_cast<double>(x_min))) {
  if (!(alpha > 1.0) || x_min < 1) throw Error("power-law sampler: need alpha > 1, x_min >= 1");
  survival_.reserve(kTableSize);
  double z = zeta_min_;
  for (std::size_t k = 0; k < kTableSize; ++k) {
    survival_.push_back(z / zeta_min_);
    z -= std::pow(static_cast<double>(x_min + k), -alpha);
    if (survival_.back() < 1e-12) break;
  }
}

std::uint64_t PowerLawSampler::invert(double u) const {
  // Smallest x with P(X > x) < u, i.e. survival(x + 1) < u.
  if (survival_.size() >= 2 && survival_.back() < u) {
    // survival_ is decreasing: find the first index k >= 1 with survival_[k] < u.
    const auto it = std::upper_bound(survival_.begin() + 1, survival_.end(), u,
                                     [](double uu, double s) { return s < uu; });
    return x_min_ + static_cast<std::uint64_t>(it - survival_.begin()) - 1;
  }
  // Far tail: double, then bisect, on the exact survival function.
  const auto surv = [&](std::uint64_t x) { return hzeta(alpha_, static_cast<double>(x)) / zeta_min_; };
  std::uint64_t lo = x_min_ + survival_.size() - 1;
  std::uint64_t hi = std::max<std::uint64_t>(lo * 2, lo + 1);
  constexpr std::uint64_t kCap = std::uint64_t{1} << 52;
  while (surv(hi + 1) >= u && hi < kCap) hi *= 2;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (surv(mid + 1) < u) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

std::uint64_t PowerLawSampler::operator()(Rng& rng) const {
  double u = rng.uniform();
  while (u <= 0.0) u = rng.uniform();
  return invert(u);
}

PowerLawFit fit_power_law(std::span<const std::uint64_t> data, const PowerLawOptions& options) {
  if (data.size() < options.min_observations) {
    throw Error("fit_power_law: need at least " + std::to_string(options.min_observations) +
                " observations, got " + std::to_string(data.size()));
  }
  if (std::find(data.begin(), data.end(), 0) != data.end()) {
    throw Error("fit_power_law: observations must be positive");
  }
  const Histogram h = Histogram::of(data);
  if (h.values.size() < 2) throw Error("fit_power_law: all observations are equal");
  PowerLawFit fit = fit_tail(h);
  fit.seed = options.seed;
  if (!options.bootstrap || options.replicates == 0) return fit;

  std::vector<std::uint64_t> body;  // observations below x_min, kept for resampling
  for (const auto v : data) {
    if (v < fit.x_min) body.push_back(v);
  }
  std::sort(body.begin(), body.end());
  const double p_tail = static_cast<double>(fit.n_tail) / static_cast<double>(data.size());
  const PowerLawSampler sampler(fit.alpha, fit.x_min);

  const auto replicate = [&](std::size_t r) {
    Rng rng(mix_seed(options.seed, r));
    std::vector<std::uint64_t> sample(data.size());
    for (auto& v : sample) v = (body.empty() || rng.uniform() < p_tail) ? sampler(rng) : body[rng.below(body.size())];
    const Histogram hb = Histogram::of(sample);
    if (hb.values.size() < 2) return true;  // a constant sample fits perfectly
    return fit_tail(hb).ks >= fit.ks;
  };

  std::size_t threads = options.threads ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<std::size_t>(threads, 1, options.replicates);
  std::vector<char> worse(options.replicates, 0);
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t r = next++; r < options.replicates; r = next++) worse[r] = replicate(r) ? 1 : 0;
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  const auto count = std::count(worse.begin(), worse.end(), 1);
  fit.replicates = options.replicates;
  fit.p_value = static_cast<double>(count) / static_cast<double>(options.replicates);
  return fit;
}

}  // namespace skg::netsci

#ifndef EMDKIT_SIGNIFICANCE_HPP
#define EMDKIT_SIGNIFICANCE_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/decompose.hpp"
#include "emdkit/envelope.hpp"
#include "emdkit/siggen.hpp"

namespace emdkit {

struct SignificancePoint {
  double mean_period = 0;     // seconds
  double energy_density = 0;  // mean of imf^2
  bool applicable = true;     // false when the component has no zero crossing
  bool inside_bounds = false;
};

struct ConfidenceBand {
  std::vector<double> period_grid;  // seconds, ascending
  std::vector<double> lower_5th;
  std::vector<double> upper_95th;
  int ensemble_size = 0;
  Index noise_length = 0;
  double sample_rate = 1.0;
  Variant decomposer = Variant::EMD;
};

/// Width of a period bin, in octaves.
inline constexpr double kBandBinOctaves = 0.25;
/// Bins with fewer cloud points are merged into a neighbour.
inline constexpr std::size_t kBandMinBinPoints = 10;
inline constexpr int kMinBandTrials = 50;

/**
 * Mean period 2 * duration / zero crossings and energy density mean(imf^2).
 * Throws UndefinedPeriodError for components without zero crossings.
 */
template <typename Scalar>
SignificancePoint imf_statistics(const Signal<Scalar>& imf) {
  if (imf.size() < 8) throw InsufficientDataError("imf_statistics needs at least 8 samples");
  const Index zc = count_zero_crossings(imf);
  if (zc == 0) throw UndefinedPeriodError("component has no zero crossings; period undefined");
  SignificancePoint p;
  p.mean_period = 2.0 * static_cast<double>(imf.size()) * static_cast<double>(imf.dt()) /
                  static_cast<double>(zc);
  p.energy_density = static_cast<double>(imf.samples().squaredNorm()) / static_cast<double>(imf.size());
  return p;
}

namespace detail {

/// Linear-interpolated percentile (q in [0, 1]) of an unsorted sample.
inline double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = pos - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

struct CloudPoint {
  double log_period;
  double energy_density;
};

/// Unit-variance scaling so the test ignores the overall signal level.
template <typename Scalar>
double unit_variance_scale(const Signal<Scalar>& x) {
  const double sd = static_cast<double>(stddev(x));
  if (!(sd > 0.0)) throw UndefinedRatioError("signal has zero variance");
  return 1.0 / sd;
}

template <typename Scalar>
void collect(const Decomposition<Scalar>& d, double scale, std::vector<CloudPoint>& cloud) {
  for (const auto& c : d.components()) {
    if (count_zero_crossings(c) == 0) continue;
    const auto p = imf_statistics(c);
    cloud.push_back({std::log2(p.mean_period), p.energy_density * scale * scale});
  }
}

inline ConfidenceBand band_from_cloud(std::vector<CloudPoint> cloud) {
  ConfidenceBand band;
  if (cloud.empty()) return band;
  std::sort(cloud.begin(), cloud.end(),
            [](const CloudPoint& a, const CloudPoint& b) { return a.log_period < b.log_period; });
  // Fixed-width bins in log2 period, small bins folded into the next one.
  std::vector<std::vector<CloudPoint>> bins;
  std::vector<CloudPoint> current;
  double edge = std::floor(cloud.front().log_period / kBandBinOctaves) * kBandBinOctaves;
  for (const auto& p : cloud) {
    while (p.log_period >= edge + kBandBinOctaves) {
      edge += kBandBinOctaves;
      if (current.size() >= kBandMinBinPoints) {
        bins.push_back(std::move(current));
        current.clear();
      }
    }
    current.push_back(p);
  }
  if (!current.empty()) {
    if (current.size() < kBandMinBinPoints && !bins.empty()) {
      bins.back().insert(bins.back().end(), current.begin(), current.end());
    } else {
      bins.push_back(std::move(current));
    }
  }
  for (const auto& b : bins) {
    std::vector<double> lp;
    std::vector<double> e;
    for (const auto& p : b) {
      lp.push_back(p.log_period);
      e.push_back(p.energy_density);
    }
    band.period_grid.push_back(std::exp2(percentile(lp, 0.5)));
    band.lower_5th.push_back(percentile(e, 0.05));
    band.upper_95th.push_back(percentile(e, 0.95));
  }
  return band;
}

}  // namespace detail

/**
 * Monte-Carlo 5th/95th percentile bands for several decomposers at once.
 * Every trial decomposes one seeded unit-variance white-noise record; the
 * Gram-Schmidt orderings reuse that trial's EMD.
 */
inline std::map<Variant, ConfidenceBand> white_noise_bands(Index length,
                                                           const std::vector<Variant>& decomposers,
                                                           int trials, std::uint64_t seed,
                                                           double sample_rate = 1.0,
                                                           const SiftConfig& cfg = {}) {
  if (trials < kMinBandTrials) {
    throw InvalidConfigError("white_noise_band needs at least " + std::to_string(kMinBandTrials) +
                             " trials");
  }
  if (length < 8) throw InsufficientDataError("noise length must be >= 8");
  for (auto v : decomposers) {
    if (v == Variant::EEMD) throw InvalidConfigError("EEMD bands are not supported");
  }
  std::map<Variant, std::vector<detail::CloudPoint>> clouds;
  for (int t = 0; t < trials; ++t) {
    SignalSpec spec;
    spec.kind = SignalKind::WGN;
    spec.sample_rate = sample_rate;
    spec.duration = static_cast<double>(length) / sample_rate;
    spec.seed = seed * 1000003ULL + static_cast<std::uint64_t>(t);
    const auto x = generate(spec);
    const double scale = detail::unit_variance_scale(x);
    std::optional<Decomposition<double>> base;
    for (auto v : decomposers) {
      if (v == Variant::EPEMD) {
        detail::collect(epemd(x, cfg), scale, clouds[v]);
        continue;
      }
      if (!base) base = emd(x, cfg);
      if (v == Variant::EMD) {
        detail::collect(*base, scale, clouds[v]);
      } else {
        detail::collect(orthogonal_variants(*base, v), scale, clouds[v]);
      }
    }
  }
  std::map<Variant, ConfidenceBand> out;
  for (auto v : decomposers) {
    auto band = detail::band_from_cloud(std::move(clouds[v]));
    band.ensemble_size = trials;
    band.noise_length = length;
    band.sample_rate = sample_rate;
    band.decomposer = v;
    out.emplace(v, std::move(band));
  }
  return out;
}

inline ConfidenceBand white_noise_band(Index length, Variant decomposer, int trials,
                                       std::uint64_t seed, double sample_rate = 1.0,
                                       const SiftConfig& cfg = {}) {
  return white_noise_bands(length, {decomposer}, trials, seed, sample_rate, cfg).at(decomposer);
}

/// Percentile curve value at `period`, linear in log-log space (extrapolated at the ends).
inline double band_value(const std::vector<double>& periods, const std::vector<double>& values,
                         double period) {
  if (periods.empty()) throw InsufficientDataError("empty confidence band");
  if (periods.size() == 1) return values.front();
  const double lp = std::log(period);
  std::size_t hi = 1;
  while (hi + 1 < periods.size() && std::log(periods[hi]) < lp) ++hi;
  const std::size_t lo = hi - 1;
  const double x0 = std::log(periods[lo]);
  const double x1 = std::log(periods[hi]);
  const double y0 = std::log(values[lo]);
  const double y1 = std::log(values[hi]);
  return std::exp(y0 + (y1 - y0) * (lp - x0) / (x1 - x0));
}

/**
 * Marks each component inside or outside the band at its mean period. The
 * decomposed signal (the component sum) is first scaled to unit variance.
 */
template <typename Scalar>
std::vector<SignificancePoint> significance_test(const Decomposition<Scalar>& d,
                                                 const ConfidenceBand& band) {
  if (std::abs(static_cast<double>(d.residue.sample_rate()) - band.sample_rate) >
      1e-9 * band.sample_rate) {
    throw DimensionError("band sample rate does not match the decomposition");
  }
  const double scale = detail::unit_variance_scale(reconstruct(d));
  std::vector<SignificancePoint> out;
  for (const auto& c : d.components()) {
    SignificancePoint p;
    if (count_zero_crossings(c) == 0) {
      p.applicable = false;
      p.energy_density = static_cast<double>(c.samples().squaredNorm()) /
                         static_cast<double>(c.size()) * scale * scale;
      out.push_back(p);
      continue;
    }
    p = imf_statistics(c);
    p.energy_density *= scale * scale;
    const double lo = band_value(band.period_grid, band.lower_5th, p.mean_period);
    const double hi = band_value(band.period_grid, band.upper_95th, p.mean_period);
    p.inside_bounds = p.energy_density >= lo && p.energy_density <= hi;
    out.push_back(p);
  }
  return out;
}

}  // namespace emdkit

#endif  // EMDKIT_SIGNIFICANCE_HPP

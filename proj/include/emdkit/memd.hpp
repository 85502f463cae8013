#ifndef EMDKIT_MEMD_HPP
#define EMDKIT_MEMD_HPP

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/emd.hpp"
#include "emdkit/envelope.hpp"

namespace emdkit {

/// Channels of an n-variate record stored column-wise (rows are samples).
template <typename Scalar>
class MultivariateSignal {
 public:
  MultivariateSignal(Matrix<Scalar> data, Scalar sample_rate, Scalar t0 = Scalar(0))
      : data_(std::move(data)), sample_rate_(sample_rate), t0_(t0) {
    if (data_.cols() < 2) throw InvalidSignalError("multivariate signal needs at least 2 channels");
    // Validates length, rate and finiteness through the univariate invariants.
    for (Index j = 0; j < data_.cols(); ++j) (void)channel(j);
  }

  static MultivariateSignal from_channels(const std::vector<Signal<Scalar>>& channels) {
    if (channels.size() < 2) {
      throw InvalidSignalError("multivariate signal needs at least 2 channels");
    }
    const auto& first = channels.front();
    Matrix<Scalar> data(first.size(), static_cast<Index>(channels.size()));
    for (std::size_t j = 0; j < channels.size(); ++j) {
      if (!channels[j].same_grid(first)) {
        throw DimensionError("all channels must share length and sample rate");
      }
      data.col(static_cast<Index>(j)) = channels[j].samples();
    }
    return MultivariateSignal(std::move(data), first.sample_rate(), first.t0());
  }

  const Matrix<Scalar>& data() const noexcept { return data_; }
  Index size() const noexcept { return data_.rows(); }
  Index channel_count() const noexcept { return data_.cols(); }
  Scalar sample_rate() const noexcept { return sample_rate_; }
  Scalar t0() const noexcept { return t0_; }

  Signal<Scalar> channel(Index j) const {
    return Signal<Scalar>(data_.col(j), sample_rate_, t0_);
  }

  MultivariateSignal with_data(Matrix<Scalar> data) const {
    if (data.rows() != data_.rows() || data.cols() != data_.cols()) {
      throw DimensionError("with_data: shape mismatch");
    }
    return MultivariateSignal(std::move(data), sample_rate_, t0_);
  }

 private:
  Matrix<Scalar> data_;
  Scalar sample_rate_;
  Scalar t0_;
};

/// K unit vectors in n dimensions, one per row.
template <typename Scalar>
struct DirectionSet {
  Matrix<Scalar> directions;

  Index count() const noexcept { return directions.rows(); }
  Index dimension() const noexcept { return directions.cols(); }
};

namespace detail {

inline double radical_inverse(unsigned long long k, unsigned base) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (k > 0) {
    r += f * static_cast<double>(k % base);
    k /= base;
    f *= inv;
  }
  return r;
}

inline unsigned nth_prime(std::size_t i) {
  static constexpr std::array<unsigned, 32> kPrimes = {
      2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,  53,
      59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113, 127, 131};
  if (i >= kPrimes.size()) throw InvalidConfigError("direction dimension too large");
  return kPrimes[i];
}

/// Integral of sin^m over [0, theta].
inline double sin_power_integral(int m, double theta) {
  if (m == 0) return theta;
  if (m == 1) return 1.0 - std::cos(theta);
  return -std::pow(std::sin(theta), m - 1) * std::cos(theta) / m +
         (m - 1.0) / m * sin_power_integral(m - 2, theta);
}

/// Polar angle in [0, pi] with density proportional to sin^m at quantile u.
inline double polar_angle(int m, double u) {
  if (m == 0) return std::numbers::pi * u;
  if (m == 1) return std::acos(std::clamp(1.0 - 2.0 * u, -1.0, 1.0));
  const double total = sin_power_integral(m, std::numbers::pi);
  double lo = 0.0;
  double hi = std::numbers::pi;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sin_power_integral(m, mid) / total < u) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

/**
 * Quasi-uniform directions on the (n-1)-sphere from a Hammersley point set.
 *
 * Point k is (k/K, phi_2(k), phi_3(k), ...) with phi_b the radical inverse in
 * base b, using successive primes. The first coordinate sets the azimuth in [0, 2pi); the
 * others set the polar angles in [0, pi] through the inverse CDF of the
 * uniform surface measure, so the point set stays low-discrepancy on the
 * sphere.
 */
template <typename Scalar = double>
DirectionSet<Scalar> hammersley_directions(Index n, Index K) {
  if (n < 2) throw DimensionError("directions need dimension >= 2");
  if (K < 1) throw InvalidConfigError("direction count must be >= 1");
  Matrix<Scalar> dirs(K, n);
  std::vector<double> angles(static_cast<std::size_t>(n - 1));
  for (Index k = 0; k < K; ++k) {
    const double u_first = static_cast<double>(k) / static_cast<double>(K);
    // angles[0..n-3] polar, angles[n-2] azimuth.
    for (Index j = 0; j + 1 < n - 1; ++j) {
      const double u = detail::radical_inverse(static_cast<unsigned long long>(k),
                                               detail::nth_prime(static_cast<std::size_t>(j)));
      const int power = static_cast<int>(n - 2 - j);
      angles[static_cast<std::size_t>(j)] = detail::polar_angle(power, u);
    }
    angles[static_cast<std::size_t>(n - 2)] = 2.0 * std::numbers::pi * u_first;

    double sin_prod = 1.0;
    for (Index j = 0; j < n - 1; ++j) {
      const double a = angles[static_cast<std::size_t>(j)];
      dirs(k, j) = static_cast<Scalar>(sin_prod * std::cos(a));
      sin_prod *= std::sin(a);
    }
    dirs(k, n - 1) = static_cast<Scalar>(sin_prod);
    dirs.row(k).normalize();
  }
  return DirectionSet<Scalar>{std::move(dirs)};
}

/// Per-sample projection sum_j d_j x_j(t).
template <typename Scalar, typename Derived>
Signal<Scalar> project(const MultivariateSignal<Scalar>& x, const Eigen::MatrixBase<Derived>& d) {
  if (d.size() != x.channel_count()) {
    throw DimensionError("direction dimension " + std::to_string(d.size()) +
                         " does not match channel count " + std::to_string(x.channel_count()));
  }
  Vector<Scalar> dv(d.size());
  for (Index i = 0; i < d.size(); ++i) dv[i] = d.derived().coeff(i);
  Vector<Scalar> p = x.data() * dv;
  return Signal<Scalar>(std::move(p), x.sample_rate(), x.t0());
}

/**
 * Mean of the multidimensional envelopes averaged over all directions.
 *
 * For each direction the extrema instants of the projection select where
 * every channel is spline-interpolated. Directions whose projection has too
 * few extrema are skipped; nullopt when all are.
 */
template <typename Scalar>
std::optional<Matrix<Scalar>> multivariate_mean_envelope(const Matrix<Scalar>& x,
                                                         const DirectionSet<Scalar>& dirs) {
  if (dirs.dimension() != x.cols()) throw DimensionError("direction set dimension mismatch");
  if (x.rows() < 3) return std::nullopt;
  Matrix<Scalar> acc = Matrix<Scalar>::Zero(x.rows(), x.cols());
  Index used = 0;
  Vector<Scalar> p(x.rows());
  for (Index k = 0; k < dirs.count(); ++k) {
    p.noalias() = x * dirs.directions.row(k).transpose();
    const auto ex = detect_extrema(p);
    if (ex.count() < kMinEnvelopeExtrema || ex.maxima.empty() || ex.minima.empty()) continue;
    acc += Scalar(0.5) * (envelope_through(indices_of(ex.maxima), x) +
                          envelope_through(indices_of(ex.minima), x));
    ++used;
  }
  if (used == 0) return std::nullopt;
  return acc / Scalar(used);
}

template <typename Scalar>
std::optional<MultivariateSignal<Scalar>> multivariate_mean_envelope(
    const MultivariateSignal<Scalar>& x, const DirectionSet<Scalar>& dirs) {
  auto m = multivariate_mean_envelope(x.data(), dirs);
  if (!m) return std::nullopt;
  return x.with_data(std::move(*m));
}

/// Envelope-mean amplitude below which a multivariate iterate is a mode.
inline constexpr double kMemdStopRatio = 0.075;
inline constexpr Index kDefaultDirections = 64;

/**
 * Sifts one multivariate mode out of `work`; nullopt when no direction
 * yields envelopes.
 */
template <typename Scalar>
std::optional<Matrix<Scalar>> extract_multivariate_mode(const Matrix<Scalar>& work,
                                                        const DirectionSet<Scalar>& dirs,
                                                        const SiftConfig& cfg) {
  Matrix<Scalar> mode = work;
  for (int it = 0; it < cfg.max_sift_iterations; ++it) {
    auto mean = multivariate_mean_envelope(mode, dirs);
    if (!mean) {
      if (it == 0) return std::nullopt;
      break;
    }
    const Scalar mean_amp = mean->cwiseAbs().maxCoeff();
    const Scalar mode_amp = mode.cwiseAbs().maxCoeff();
    if (it > 0 && mean_amp <= Scalar(kMemdStopRatio) * mode_amp) break;
    mode -= *mean;
  }
  return mode;
}

template <typename Scalar>
struct MultivariateDecomposition {
  std::vector<MultivariateSignal<Scalar>> imfs;
  MultivariateSignal<Scalar> residue;
  Variant variant = Variant::EMD;

  std::size_t imf_count() const noexcept { return imfs.size(); }

  /// The univariate decomposition seen by channel j.
  Decomposition<Scalar> channel(Index j) const {
    std::vector<Signal<Scalar>> comps;
    comps.reserve(imfs.size());
    for (const auto& m : imfs) comps.push_back(m.channel(j));
    return Decomposition<Scalar>(std::move(comps), residue.channel(j), variant);
  }
};

/// Multivariate EMD with K Hammersley directions.
template <typename Scalar>
MultivariateDecomposition<Scalar> memd(const MultivariateSignal<Scalar>& x,
                                       Index K = kDefaultDirections, const SiftConfig& cfg = {}) {
  cfg.validate();
  const auto dirs = hammersley_directions<Scalar>(x.channel_count(), K);
  std::vector<MultivariateSignal<Scalar>> modes;
  Matrix<Scalar> work = x.data();
  const int cap = detail::imf_cap(cfg);
  while (static_cast<int>(modes.size()) < cap) {
    auto mode = extract_multivariate_mode(work, dirs, cfg);
    if (!mode || mode->squaredNorm() == Scalar(0)) break;
    work -= *mode;
    modes.push_back(x.with_data(std::move(*mode)));
  }
  return MultivariateDecomposition<Scalar>{std::move(modes), x.with_data(std::move(work)),
                                           Variant::EMD};
}

}  // namespace emdkit

#endif  // EMDKIT_MEMD_HPP

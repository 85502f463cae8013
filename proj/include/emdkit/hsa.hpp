#ifndef EMDKIT_HSA_HPP
#define EMDKIT_HSA_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "emdkit/core.hpp"

namespace emdkit {

/// How instantaneous frequency is derived from the analytic signal.
enum class IfMethod {
  PhaseDifference,  // central differences of the unwrapped phase
  Quotient,         // (h' y - h y') / (y^2 + h^2) with h the Hilbert transform
};

template <typename Scalar>
struct AnalyticAttributes {
  Vector<Scalar> hilbert;    // imaginary part of the analytic signal
  Vector<Scalar> amplitude;  // |z|
  Vector<Scalar> phase;      // unwrapped arg z, radians
  Vector<Scalar> inst_freq;  // Hz
};

namespace detail {

/// Frequency-domain analytic signal: positive frequencies doubled, negative
/// ones zeroed, DC and Nyquist kept.
template <typename Scalar>
std::vector<std::complex<Scalar>> analytic_fft(const Vector<Scalar>& x) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<std::complex<Scalar>> in(n);
  for (std::size_t i = 0; i < n; ++i) in[i] = {x[static_cast<Index>(i)], Scalar(0)};
  Eigen::FFT<Scalar> fft;
  std::vector<std::complex<Scalar>> spec;
  fft.fwd(spec, in);
  const std::size_t half = n / 2;
  for (std::size_t k = 1; k < n; ++k) {
    if (k < (n + 1) / 2) {
      spec[k] *= Scalar(2);
    } else if (!(n % 2 == 0 && k == half)) {
      spec[k] = Scalar(0);
    }
  }
  std::vector<std::complex<Scalar>> z;
  fft.inv(z, spec);
  return z;
}

template <typename Scalar>
Vector<Scalar> central_difference(const Vector<Scalar>& v, Scalar dt) {
  const Index n = v.size();
  Vector<Scalar> d(n);
  d[0] = (v[1] - v[0]) / dt;
  d[n - 1] = (v[n - 1] - v[n - 2]) / dt;
  for (Index i = 1; i + 1 < n; ++i) d[i] = (v[i + 1] - v[i - 1]) / (Scalar(2) * dt);
  return d;
}

template <typename Scalar>
Vector<Scalar> unwrap(const Vector<Scalar>& wrapped) {
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  Vector<Scalar> out(wrapped.size());
  Scalar offset = 0;
  out[0] = wrapped[0];
  for (Index i = 1; i < wrapped.size(); ++i) {
    const Scalar jump = wrapped[i] - wrapped[i - 1];
    offset -= two_pi * std::round(jump / two_pi);
    out[i] = wrapped[i] + offset;
  }
  return out;
}

}  // namespace detail

/// Minimum record length for a meaningful discrete analytic signal.
inline constexpr Index kMinAnalyticLength = 8;

/**
 * Instantaneous amplitude, unwrapped phase and instantaneous frequency of x
 * through the FFT-based analytic signal.
 */
template <typename Scalar>
AnalyticAttributes<Scalar> analytic_signal(const Signal<Scalar>& x,
                                           IfMethod method = IfMethod::PhaseDifference) {
  const Index n = x.size();
  if (n < kMinAnalyticLength) {
    throw InsufficientDataError("analytic signal needs at least " +
                                std::to_string(kMinAnalyticLength) + " samples");
  }
  const auto z = detail::analytic_fft(x.samples());
  AnalyticAttributes<Scalar> a;
  a.hilbert.resize(n);
  a.amplitude.resize(n);
  Vector<Scalar> wrapped(n);
  for (Index i = 0; i < n; ++i) {
    const auto& zi = z[static_cast<std::size_t>(i)];
    a.hilbert[i] = zi.imag();
    a.amplitude[i] = std::abs(zi);
    wrapped[i] = std::arg(zi);
  }
  a.phase = detail::unwrap(wrapped);
  constexpr Scalar two_pi = Scalar(2) * std::numbers::pi_v<Scalar>;
  const Scalar dt = x.dt();
  if (method == IfMethod::PhaseDifference) {
    a.inst_freq = detail::central_difference(a.phase, dt) / two_pi;
  } else {
    const Vector<Scalar>& y = x.samples();
    const Vector<Scalar> dy = detail::central_difference(y, dt);
    const Vector<Scalar> dh = detail::central_difference(a.hilbert, dt);
    a.inst_freq.resize(n);
    for (Index i = 0; i < n; ++i) {
      const Scalar den = y[i] * y[i] + a.hilbert[i] * a.hilbert[i];
      a.inst_freq[i] = den > Scalar(0) ? (dh[i] * y[i] - a.hilbert[i] * dy[i]) / den / two_pi
                                       : Scalar(0);
    }
  }
  return a;
}

/**
 * Time-frequency-energy grid: squared instantaneous amplitude accumulated in
 * (frequency, time) cells. Frequency bins are linear on [0, Nyquist].
 */
template <typename Scalar>
struct HilbertSpectrum {
  Vector<Scalar> freq_bins;  // bin centres, Hz
  Vector<Scalar> time_bins;  // bin centres, s
  Matrix<Scalar> energy;     // [freq][time], sum of a^2 over samples in the cell
  Vector<Scalar> marginal;   // per frequency bin, sum_t energy * dt
  Scalar sample_interval = 0;
  Scalar freq_bin_width = 0;
  Index clipped_negative = 0;  // samples with IF < 0 placed in bin 0
  Index clipped_above = 0;     // samples with IF > Nyquist placed in the top bin
};

struct SpectrumOptions {
  Index n_freq_bins = 256;
  Index n_time_bins = 0;  // 0 = one column per sample
  bool include_residue = false;
  IfMethod method = IfMethod::PhaseDifference;
};

/// h(f) = integral over time of H(f, t).
template <typename Scalar>
Vector<Scalar> marginal_spectrum(const HilbertSpectrum<Scalar>& h) {
  return h.energy.rowwise().sum() * h.sample_interval;
}

/// Accumulates the spectrum of a list of components on a common grid.
template <typename Scalar>
HilbertSpectrum<Scalar> hilbert_spectrum(const std::vector<Signal<Scalar>>& parts,
                                         const Signal<Scalar>& grid,
                                         const SpectrumOptions& opt = {}) {
  if (opt.n_freq_bins < 1) throw InvalidConfigError("n_freq_bins must be >= 1");
  if (opt.n_time_bins < 0) throw InvalidConfigError("n_time_bins must be >= 0");
  const Index n = grid.size();
  const Index cols = opt.n_time_bins == 0 ? n : std::min(opt.n_time_bins, n);
  const Scalar nyquist = grid.sample_rate() / Scalar(2);

  HilbertSpectrum<Scalar> h;
  h.sample_interval = grid.dt();
  h.freq_bin_width = nyquist / Scalar(opt.n_freq_bins);
  h.freq_bins.resize(opt.n_freq_bins);
  for (Index f = 0; f < opt.n_freq_bins; ++f) h.freq_bins[f] = (Scalar(f) + Scalar(0.5)) * h.freq_bin_width;

  std::vector<Index> column_of(static_cast<std::size_t>(n));
  std::vector<Index> column_count(static_cast<std::size_t>(cols), 0);
  h.time_bins = Vector<Scalar>::Zero(cols);
  for (Index i = 0; i < n; ++i) {
    const Index c = (i * cols) / n;
    column_of[static_cast<std::size_t>(i)] = c;
    ++column_count[static_cast<std::size_t>(c)];
    h.time_bins[c] += grid.time_at(i);
  }
  for (Index c = 0; c < cols; ++c) h.time_bins[c] /= Scalar(column_count[static_cast<std::size_t>(c)]);

  h.energy = Matrix<Scalar>::Zero(opt.n_freq_bins, cols);
  for (const auto& part : parts) {
    if (!part.same_grid(grid)) throw DimensionError("hilbert_spectrum: component shape mismatch");
    const auto attr = analytic_signal(part, opt.method);
    for (Index i = 0; i < n; ++i) {
      const Scalar f = attr.inst_freq[i];
      Index bin;
      if (f < Scalar(0)) {
        bin = 0;
        ++h.clipped_negative;
      } else if (f > nyquist) {
        bin = opt.n_freq_bins - 1;
        ++h.clipped_above;
      } else {
        bin = std::min<Index>(static_cast<Index>(f / h.freq_bin_width), opt.n_freq_bins - 1);
      }
      h.energy(bin, column_of[static_cast<std::size_t>(i)]) += attr.amplitude[i] * attr.amplitude[i];
    }
  }
  h.marginal = marginal_spectrum(h);
  return h;
}

/// Hilbert spectrum of the IMFs of d (residue only when requested).
template <typename Scalar>
HilbertSpectrum<Scalar> hilbert_spectrum(const Decomposition<Scalar>& d,
                                         const SpectrumOptions& opt = {}) {
  std::vector<Signal<Scalar>> parts = d.imfs;
  if (opt.include_residue) parts.push_back(d.residue);
  return hilbert_spectrum(parts, d.residue, opt);
}

template <typename Scalar>
HilbertSpectrum<Scalar> hilbert_spectrum(const Decomposition<Scalar>& d, Index n_freq_bins) {
  SpectrumOptions opt;
  opt.n_freq_bins = n_freq_bins;
  return hilbert_spectrum(d, opt);
}

/// Frequency (bin centre) of the strongest cell in each time column.
template <typename Scalar>
Vector<Scalar> spectral_ridge(const HilbertSpectrum<Scalar>& h) {
  Vector<Scalar> ridge(h.energy.cols());
  for (Index c = 0; c < h.energy.cols(); ++c) {
    Index best = 0;
    h.energy.col(c).maxCoeff(&best);
    ridge[c] = h.freq_bins[best];
  }
  return ridge;
}

}  // namespace emdkit

#endif  // EMDKIT_HSA_HPP

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "emdkit/hsa.hpp"
#include "emdkit/emd.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace emdkit;
using testutil::sig;

namespace {

// Hilbert transform by a naive DFT: -i sgn(k) applied bin by bin.
oracle::Vec naive_hilbert(const oracle::Vec& x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> X(n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      X[k] += x[i] * std::polar(1.0, -2 * std::numbers::pi * double(k * i) / double(n));
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (k == 0 || 2 * k == n) {
      X[k] = 0;
    } else if (2 * k < n) {
      X[k] *= std::complex<double>(0, -1);
    } else {
      X[k] *= std::complex<double>(0, 1);
    }
  }
  oracle::Vec h(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::complex<double> s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      s += X[k] * std::polar(1.0, 2 * std::numbers::pi * double(k * i) / double(n));
    }
    h[i] = s.real() / double(n);
  }
  return h;
}

oracle::Vec cosine(double f, std::size_t n, double fs, double amp = 1.0) {
  oracle::Vec x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = amp * std::cos(2 * std::numbers::pi * f * double(i) / fs);
  return x;
}

}  // namespace

TEST(Analytic, CosineHasSineTransform) {
  const auto x = cosine(10, 1000, 1000);
  for (auto m : {IfMethod::PhaseDifference, IfMethod::Quotient}) {
    const auto a = analytic_signal(sig(x, 1000), m);
    for (int i = 0; i < 1000; ++i) {
      ASSERT_NEAR(a.hilbert[i], std::sin(2 * std::numbers::pi * 10 * i / 1000.0), 1e-12);
      ASSERT_NEAR(a.amplitude[i], 1.0, 1e-12);
    }
    for (int i = 1; i < 999; ++i) ASSERT_NEAR(a.inst_freq[i], 10.0, 0.01);
  }
}

TEST(Analytic, MatchesNaiveDftHilbert) {
  oracle::SignalFactory f(81);
  for (std::size_t n : {64u, 65u, 127u, 256u}) {
    const auto x = f.gaussian(n);
    const auto a = analytic_signal(sig(x));
    const auto h = naive_hilbert(x);
    for (std::size_t i = 0; i < n; ++i) ASSERT_NEAR(a.hilbert[i], h[i], 1e-10) << n;
  }
}

TEST(Analytic, ConstantHasZeroFrequency) {
  const auto a = analytic_signal(sig(oracle::Vec(64, 2.0)));
  for (int i = 0; i < 64; ++i) {
    EXPECT_NEAR(a.inst_freq[i], 0.0, 1e-12);
    EXPECT_NEAR(a.amplitude[i], 2.0, 1e-12);
  }
}

TEST(Analytic, AmplitudeAndPhaseRebuildSignal) {
  oracle::SignalFactory f(82);
  const auto x = f.multitone(500, 100.0, 3, 1.0, 30.0);
  const auto a = analytic_signal(sig(x, 100));
  for (int i = 0; i < 500; ++i) ASSERT_NEAR(a.amplitude[i] * std::cos(a.phase[i]), x[i], 1e-10);
}

TEST(Analytic, ChirpFrequencyTracksRamp) {
  const double fs = 1000, T = 2, f0 = 20, f1 = 60;
  const std::size_t n = 2000;
  oracle::Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / fs;
    x[i] = std::cos(2 * std::numbers::pi * (f0 * t + 0.5 * (f1 - f0) / T * t * t));
  }
  const auto a = analytic_signal(sig(x, fs));
  const auto c = testutil::central(static_cast<Index>(n), 0.8);
  for (Index i = c.begin; i < c.end; ++i) {
    ASSERT_NEAR(a.inst_freq[i], f0 + (f1 - f0) * (i / fs) / T, 3.0) << i;
  }
}

TEST(Analytic, ShortInputRejected) {
  EXPECT_THROW(analytic_signal(sig({1, 2, 3, 4, 5, 6, 7})), InsufficientDataError);
}

TEST(Spectrum, ToneLandsInItsBin) {
  const double fs = 1000;
  const auto x = cosine(52, 2000, fs);  // inside a bin, not on an edge
  SpectrumOptions opt;
  opt.n_freq_bins = 100;
  const auto h = hilbert_spectrum(std::vector<Signal<double>>{sig(x, fs)}, sig(x, fs), opt);
  const Index bin = static_cast<Index>(52 / h.freq_bin_width);
  EXPECT_GE(h.energy.row(bin).sum(), 0.95 * h.energy.sum());
  EXPECT_EQ(spectral_ridge(h)[500], h.freq_bins[bin]);
}

TEST(Spectrum, TotalIsAnalyticEnergy) {
  // Sum of a^2 dt over all cells; for a whole-period tone that is twice its energy.
  const double fs = 500;
  const auto x = cosine(25, 1000, fs, 3.0);
  const auto h = hilbert_spectrum(std::vector<Signal<double>>{sig(x, fs)}, sig(x, fs));
  EXPECT_NEAR(h.marginal.sum(), 2 * oracle::inner(x, x, 1 / fs), 1e-9);
  EXPECT_NEAR(h.marginal.sum(), h.energy.sum() / fs, 1e-12);
}

TEST(Spectrum, ScalesQuadratically) {
  oracle::SignalFactory f(83);
  const auto x = sig(f.multitone(600, 200.0, 2, 5.0, 60.0), 200.0);
  const auto d = emd(x);
  const auto h1 = hilbert_spectrum(d, 64);
  const auto h2 = hilbert_spectrum(emd(4.0 * x), 64);
  EXPECT_LT((h2.energy - 16.0 * h1.energy).cwiseAbs().maxCoeff(), 1e-9 * h2.energy.maxCoeff());
}

TEST(Spectrum, NoImfsGivesZeroGrid) {
  const auto r = sig(oracle::Vec(100, 1.0), 50.0);
  const Decomposition<double> d({}, r, Variant::EMD);
  SpectrumOptions opt;
  opt.n_freq_bins = 16;
  opt.n_time_bins = 10;
  const auto h = hilbert_spectrum(d, opt);
  EXPECT_EQ(h.energy.rows(), 16);
  EXPECT_EQ(h.energy.cols(), 10);
  EXPECT_EQ(h.energy.sum(), 0.0);
  opt.include_residue = true;
  EXPECT_GT(hilbert_spectrum(d, opt).energy.sum(), 0.0);
}

TEST(Spectrum, TimeBinsAverageColumns) {
  const auto x = cosine(10, 1000, 1000);
  SpectrumOptions opt;
  opt.n_time_bins = 10;
  const auto h = hilbert_spectrum(std::vector<Signal<double>>{sig(x, 1000)}, sig(x, 1000), opt);
  EXPECT_EQ(h.time_bins.size(), 10);
  EXPECT_NEAR(h.time_bins[0], 0.0495, 1e-12);
  opt.n_time_bins = 0;
  EXPECT_EQ(hilbert_spectrum(std::vector<Signal<double>>{sig(x, 1000)}, sig(x, 1000), opt)
                .energy.cols(),
            1000);
}

TEST(Spectrum, NegativeFrequenciesClipped) {
  // Deep beats of a strong slow tone and a nearly as strong fast one.
  const double fs = 1000;
  auto x = cosine(10, 1000, fs);
  const auto y = cosine(20, 1000, fs, 0.9);
  for (int i = 0; i < 1000; ++i) x[i] += y[i];
  const auto h = hilbert_spectrum(std::vector<Signal<double>>{sig(x, fs)}, sig(x, fs));
  EXPECT_GT(h.clipped_negative, 0);
  const auto a = analytic_signal(sig(x, fs));
  EXPECT_NEAR(h.energy.sum(), a.amplitude.squaredNorm(), 1e-9 * h.energy.sum());
}

TEST(Spectrum, BadOptions) {
  const auto x = sig(cosine(10, 100, 100), 100);
  SpectrumOptions opt;
  opt.n_freq_bins = 0;
  EXPECT_THROW(hilbert_spectrum(std::vector<Signal<double>>{x}, x, opt), InvalidConfigError);
  opt = {};
  opt.n_time_bins = -1;
  EXPECT_THROW(hilbert_spectrum(std::vector<Signal<double>>{x}, x, opt), InvalidConfigError);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "emdkit/envelope.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace emdkit;
using testutil::sig;

namespace {

std::vector<std::size_t> idx(const std::vector<Extremum<double>>& e) {
  std::vector<std::size_t> out;
  for (const auto& x : e) out.push_back(static_cast<std::size_t>(x.index));
  return out;
}

}  // namespace

TEST(Extrema, Alternating) {
  const auto ex = detect_extrema(sig({1, 3, 1, 3, 1}));
  EXPECT_EQ(idx(ex.maxima), (std::vector<std::size_t>{1, 3}));
  EXPECT_EQ(idx(ex.minima), (std::vector<std::size_t>{2}));
  EXPECT_EQ(ex.maxima[0].value, 3.0);
}

TEST(Extrema, MonotoneHasNone) {
  const auto ex = detect_extrema(sig({1, 2, 3, 4, 5}));
  EXPECT_TRUE(ex.maxima.empty());
  EXPECT_TRUE(ex.minima.empty());
}

TEST(Extrema, PlateauCollapsesToCentre) {
  const auto ex = detect_extrema(sig({0, 2, 2, 2, 0, 1}));
  EXPECT_EQ(idx(ex.maxima), (std::vector<std::size_t>{2}));
  EXPECT_EQ(idx(ex.minima), (std::vector<std::size_t>{4}));
}

TEST(Extrema, PlateauTouchingEndIsNotExtremum) {
  const auto ex = detect_extrema(sig({0, 1, 1, 1}));
  EXPECT_EQ(ex.count(), 0u);
}

TEST(Extrema, TooShortThrows) {
  EXPECT_THROW(detect_extrema(sig({1, 2})), InsufficientDataError);
}

TEST(Extrema, SineCounts) {
  const auto x = oracle::tones({5.0}, 1000, 1000.0);
  const auto ex = detect_extrema(sig(x, 1000));
  const auto ref = oracle::extrema(x);
  EXPECT_EQ(ex.maxima.size(), 5u);
  EXPECT_EQ(ex.minima.size(), 5u);
  EXPECT_EQ(idx(ex.maxima), ref.maxima);
  EXPECT_EQ(idx(ex.minima), ref.minima);
}

TEST(Extrema, MatchesBruteForceOnRandomSignals) {
  oracle::SignalFactory f(21);
  for (int trial = 0; trial < 1000; ++trial) {
    oracle::Vec x = f.gaussian(3 + trial % 60);
    if (trial % 3 == 0) {
      for (auto& v : x) v = std::round(v * 2.0);  // force plateaus
    }
    const auto ex = detect_extrema(sig(x));
    const auto ref = oracle::extrema(x);
    ASSERT_EQ(idx(ex.maxima), ref.maxima) << "trial " << trial;
    ASSERT_EQ(idx(ex.minima), ref.minima) << "trial " << trial;
  }
}

TEST(ZeroCrossings, SkipsExactZeros) {
  EXPECT_EQ(count_zero_crossings(sig({1, 0, -1, 0, 0, 1})), 2);
  EXPECT_EQ(count_zero_crossings(sig({1, 2, 3})), 0);
}

TEST(Spline, TwoKnotsIsLinear) {
  EXPECT_DOUBLE_EQ(cubic_spline<double>({0, 1}, {0, 1}, {0.5})[0], 0.5);
}

TEST(Spline, ConstantData) {
  const auto r = cubic_spline<double>({0, 1, 2}, {1, 1, 1}, {0.0, 0.3, 1.0, 1.7, 2.0});
  for (double v : r) EXPECT_DOUBLE_EQ(v, 1.0);
}

TEST(Spline, RejectsBadKnots) {
  EXPECT_THROW(cubic_spline<double>({0, 1, 1}, {0, 1, 2}, {0.5}), InvalidKnotsError);
  EXPECT_THROW(cubic_spline<double>({0, 2, 1}, {0, 1, 2}, {0.5}), InvalidKnotsError);
  EXPECT_THROW(cubic_spline<double>({0}, {0}, {0.5}), InvalidKnotsError);
}

TEST(Spline, MatchesDenseSolveOracle) {
  oracle::SignalFactory f(22);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 2 + trial % 12;
    oracle::Vec t(k), v(k);
    double acc = f.uniform(-5, 5);
    for (int i = 0; i < k; ++i) {
      acc += f.uniform(0.05, 3.0);
      t[i] = acc;
      v[i] = f.uniform(-10, 10);
    }
    const auto at_knots = cubic_spline(t, v, t);
    for (int i = 0; i < k; ++i) ASSERT_NEAR(at_knots[i], v[i], 1e-12);
    oracle::Vec q;
    for (int i = 0; i <= 400; ++i) q.push_back(t.front() + (t.back() - t.front()) * i / 400.0);
    const auto got = cubic_spline(t, v, q);
    const auto ref = oracle::natural_spline(t, v, q);
    for (std::size_t i = 0; i < q.size(); ++i) ASSERT_NEAR(got[i], ref[i], 1e-10);
  }
}

TEST(Spline, SecondDerivativeContinuousAndNaturalEnds) {
  const Vector<double> t = (Vector<double>(5) << 0, 1, 2.5, 3, 5).finished();
  const Matrix<double> v = (Vector<double>(5) << 1, -2, 0.5, 3, 1).finished();
  NaturalCubicSpline<double> s(t, v);
  EXPECT_EQ(s.second_derivatives()(0, 0), 0.0);
  EXPECT_EQ(s.second_derivatives()(4, 0), 0.0);
  // Finite-difference curvature agrees on both sides of an interior knot.
  const double h = 1e-4;
  const Vector<double> q = (Vector<double>(3) << 2.5 - h, 2.5, 2.5 + h).finished();
  const auto r = s.evaluate(q);
  const double fd = (r(0, 0) - 2 * r(1, 0) + r(2, 0)) / (h * h);
  EXPECT_NEAR(fd, s.second_derivatives()(2, 0), 1e-3);
}

TEST(Envelope, SineMeanIsSmall) {
  const auto x = oracle::tones({5.0}, 2000, 1000.0);  // 10 periods
  const auto env = build_envelopes(sig(x, 1000));
  ASSERT_TRUE(env.has_value());
  EXPECT_EQ(env->mean.samples(), 0.5 * (env->upper.samples() + env->lower.samples()));
  const auto c = testutil::central(2000, 0.8);
  double worst = 0;
  for (Index i = c.begin; i < c.end; ++i) worst = std::max(worst, std::abs(env->mean[i]));
  EXPECT_LT(worst, 0.05);
}

TEST(Envelope, SingleBumpHasNoEnvelope) {
  oracle::Vec x(100, 2.0);
  x[50] = 3.0;
  EXPECT_FALSE(build_envelopes(sig(x)).has_value());
  EXPECT_FALSE(build_envelopes(sig({1, 2, 3, 4})).has_value());
}

TEST(Envelope, UpperTracksSlowEnvelope) {
  // 0.2 sin(2 pi 30 t) riding on sin(2 pi 3 t): upper envelope ~ sin(2 pi 3 t) + 0.2.
  const double fs = 3000;
  const std::size_t n = 3000;
  oracle::Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = i / fs;
    x[i] = std::sin(2 * std::numbers::pi * 3 * t) + 0.2 * std::sin(2 * std::numbers::pi * 30 * t);
  }
  const auto env = build_envelopes(sig(x, fs));
  ASSERT_TRUE(env.has_value());
  const auto c = testutil::central(static_cast<Index>(n), 0.8);
  for (Index i = c.begin; i < c.end; ++i) {
    const double analytic = std::sin(2 * std::numbers::pi * 3 * i / fs) + 0.2;
    ASSERT_NEAR(env->upper[i], analytic, 0.1 * 1.2) << i;
  }
}

TEST(Envelope, OddSymmetricPeriodicMeanIsSmall) {
  oracle::SignalFactory f(23);
  for (int trial = 0; trial < 20; ++trial) {
    const double f0 = f.uniform(3, 8);
    const auto x = oracle::tones({f0, 3 * f0}, 4000, 1000.0, {1.0, 0.05});
    const auto env = build_envelopes(sig(x, 1000));
    ASSERT_TRUE(env.has_value());
    const auto c = testutil::central(4000, 0.8);
    double worst = 0, amp = 0;
    for (Index i = c.begin; i < c.end; ++i) worst = std::max(worst, std::abs(env->mean[i]));
    for (double v : x) amp = std::max(amp, std::abs(v));
    EXPECT_LE(worst, 0.05 * amp) << "f0 " << f0;
  }
}

TEST(MirrorExtend, ReflectsTwoNearestPerEnd) {
  const auto k = mirror_extend({3, 7, 12}, 16);
  EXPECT_EQ(k.t, (std::vector<double>{-7, -3, 3, 7, 12, 18, 23}));
  EXPECT_EQ(k.source, (std::vector<Index>{7, 3, 3, 7, 12, 12, 7}));
}

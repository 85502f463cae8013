#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "emdkit/memd.hpp"
#include "oracles.hpp"
#include "test_util.hpp"

using namespace emdkit;
using testutil::sig;

namespace {

MultivariateSignal<double> channels(const std::vector<oracle::Vec>& cols, double fs) {
  std::vector<Signal<double>> s;
  for (const auto& c : cols) s.push_back(sig(c, fs));
  return MultivariateSignal<double>::from_channels(s);
}

double mean_nearest_distance(const Matrix<double>& p) {
  double acc = 0;
  for (Index i = 0; i < p.rows(); ++i) {
    double best = 1e300;
    for (Index j = 0; j < p.rows(); ++j) {
      if (i != j) best = std::min(best, (p.row(i) - p.row(j)).norm());
    }
    acc += best;
  }
  return acc / double(p.rows());
}

}  // namespace

TEST(RadicalInverse, Base2) {
  EXPECT_DOUBLE_EQ(detail::radical_inverse(1, 2), 0.5);
  EXPECT_DOUBLE_EQ(detail::radical_inverse(2, 2), 0.25);
  EXPECT_DOUBLE_EQ(detail::radical_inverse(3, 2), 0.75);
  EXPECT_DOUBLE_EQ(detail::radical_inverse(5, 3), 7.0 / 9.0);
}

TEST(Directions, UnitNorm) {
  for (Index n = 2; n <= 8; ++n) {
    const auto d = hammersley_directions(n, 100);
    ASSERT_EQ(d.count(), 100);
    ASSERT_EQ(d.dimension(), n);
    for (Index k = 0; k < d.count(); ++k) EXPECT_NEAR(d.directions.row(k).norm(), 1.0, 1e-12);
  }
}

TEST(Directions, CircleQuarterTurns) {
  const auto d = hammersley_directions(2, 4);
  for (Index k = 0; k < 4; ++k) {
    const double a = k * std::numbers::pi / 2;
    EXPECT_NEAR(d.directions(k, 0), std::cos(a), 1e-15);
    EXPECT_NEAR(d.directions(k, 1), std::sin(a), 1e-15);
  }
}

TEST(Directions, MoreEvenThanIidSamples) {
  const Index n = 4, K = 64;
  const double h = mean_nearest_distance(hammersley_directions(n, K).directions);
  oracle::SignalFactory f(41);
  double iid = 0;
  for (int trial = 0; trial < 20; ++trial) {
    Matrix<double> p(K, n);
    for (Index k = 0; k < K; ++k) {
      for (Index j = 0; j < n; ++j) p(k, j) = f.gaussian(1)[0];
      p.row(k).normalize();
    }
    iid += mean_nearest_distance(p) / 20;
  }
  EXPECT_GT(h, iid);
}

TEST(Directions, Errors) {
  EXPECT_THROW(hammersley_directions(1, 8), DimensionError);
  EXPECT_THROW(hammersley_directions(3, 0), InvalidConfigError);
}

TEST(Project, Example) {
  const auto x = channels({{1, 3, 5}, {2, 4, 6}}, 1.0);
  const Vector<double> d = (Vector<double>(2) << 1, 0).finished();
  EXPECT_EQ(testutil::vec(project(x, d)), (oracle::Vec{1, 3, 5}));
  const Vector<double> e = (Vector<double>(2) << 0.5, -1).finished();
  EXPECT_EQ(testutil::vec(project(x, e)), (oracle::Vec{-1.5, -2.5, -3.5}));
  const Vector<double> bad = Vector<double>::Ones(3);
  EXPECT_THROW(project(x, bad), DimensionError);
}

TEST(MeanEnvelope, DuplicatedChannelMatchesUnivariate) {
  const auto x = oracle::tones({3.0, 31.0}, 1000, 500.0, {1.0, 0.4});
  const auto mv = channels({x, x}, 500.0);
  const auto m = multivariate_mean_envelope(mv, hammersley_directions(2, 5));  // none orthogonal to (1, 1)
  const auto uni = build_envelopes(sig(x, 500.0));
  ASSERT_TRUE(m.has_value());
  ASSERT_TRUE(uni.has_value());
  for (Index j = 0; j < 2; ++j) {
    EXPECT_LT((m->channel(j).samples() - uni->mean.samples()).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(MeanEnvelope, OppositeDirectionsAgree) {
  oracle::SignalFactory f(42);
  const auto mv = channels({f.gaussian(300), f.gaussian(300), f.gaussian(300)}, 1.0);
  Matrix<double> one(1, 3);
  one << 0.48, -0.6, 0.64;
  Matrix<double> both(2, 3);
  both << one, -one;
  const auto a = multivariate_mean_envelope(mv.data(), DirectionSet<double>{one});
  const auto b = multivariate_mean_envelope(mv.data(), DirectionSet<double>{both});
  ASSERT_TRUE(a && b);
  EXPECT_LT((*a - *b).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MeanEnvelope, ConstantHasNone) {
  const oracle::Vec c(100, 1.0);
  EXPECT_FALSE(multivariate_mean_envelope(channels({c, c}, 1.0), hammersley_directions(2, 8)));
}

TEST(Memd, ToneAlignment) {
  const double fs = 500;
  const std::size_t n = 2000;
  const auto a = oracle::tones({40.0, 4.0}, n, fs, {1.0, 2.0});
  const auto b = oracle::tones({40.0, 4.0}, n, fs, {0.5, 1.0});
  const auto d = memd(channels({a, b}, fs));
  ASSERT_GE(d.imf_count(), 2u);
  for (Index j = 0; j < 2; ++j) {
    EXPECT_NEAR(oracle::dft_peak(testutil::vec(d.imfs[0].channel(j)), fs), 40.0, 1.0);
    EXPECT_NEAR(oracle::dft_peak(testutil::vec(d.imfs[1].channel(j)), fs), 4.0, 1.0);
  }
}

TEST(Memd, CompletenessProperty) {
  oracle::SignalFactory f(43);
  for (int trial = 0; trial < 5; ++trial) {
    const Index ch = 2 + trial % 3;
    std::vector<oracle::Vec> cols;
    for (Index j = 0; j < ch; ++j) cols.push_back(f.multitone(600, 200.0, 3, 2.0, 60.0));
    const auto x = channels(cols, 200.0);
    const auto d = memd(x, 32);
    for (Index j = 0; j < ch; ++j) {
      EXPECT_LE(completeness_error(x.channel(j), d.channel(j)), 1e-12);
    }
  }
}

TEST(Memd, ChannelMismatchRejected) {
  EXPECT_THROW(channels({{1, 2, 3}, {1, 2}}, 1.0), DimensionError);
}

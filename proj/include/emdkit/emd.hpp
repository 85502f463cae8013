#ifndef EMDKIT_EMD_HPP
#define EMDKIT_EMD_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/envelope.hpp"

namespace emdkit {

/// Sifting stop parameters shared by every EMD flavour.
struct SiftConfig {
  double sd_threshold = 0.2;
  int max_sift_iterations = 100;
  int max_imfs = 0;  // 0 = unlimited

  void validate() const {
    if (!(sd_threshold > 0.0)) throw InvalidConfigError("sd_threshold must be > 0");
    if (max_sift_iterations < 1) throw InvalidConfigError("max_sift_iterations must be >= 1");
    if (max_imfs < 0) throw InvalidConfigError("max_imfs must be >= 0");
  }
};

struct EemdConfig {
  double noise_stddev_ratio = 0.2;  // fraction of the signal's standard deviation
  int ensemble_size = 100;
  std::uint64_t rng_seed = 0;

  void validate() const {
    if (!(noise_stddev_ratio >= 0.0)) throw InvalidConfigError("noise_stddev_ratio must be >= 0");
    if (ensemble_size < 1) throw InvalidConfigError("ensemble_size must be >= 1");
  }
};

/// Fraction of max|x| the envelope mean may reach for x to count as an IMF.
inline constexpr double kImfMeanTolerance = 0.05;

/// Upper bound on extracted modes when SiftConfig::max_imfs is 0.
inline constexpr int kImfSafetyCap = 64;

/**
 * IMF test: extrema and zero-crossing counts differ by at most one and the
 * envelope mean stays within kImfMeanTolerance * max|x|.
 */
template <typename Scalar>
bool is_imf(const Signal<Scalar>& x) {
  if (x.size() < 3) return false;
  const auto ex = detect_extrema(x);
  const auto zc = static_cast<long long>(count_zero_crossings(x));
  const auto ne = static_cast<long long>(ex.count());
  if (ne - zc > 1 || zc - ne > 1) return false;
  const auto env = build_envelopes(x, ex);
  if (!env) return false;
  return max_abs(env->mean) <= Scalar(kImfMeanTolerance) * max_abs(x);
}

template <typename Scalar>
struct SiftResult {
  Signal<Scalar> imf;
  Signal<Scalar> residue;
  int iterations = 0;
};

/**
 * Extracts one IMF by repeated envelope-mean subtraction.
 *
 * Stops on the Cauchy criterion sum(m^2)/sum(h_prev^2) <= sd_threshold, on a
 * passing is_imf(), or at the iteration cap. Returns nullopt when x has no
 * envelopes (end of decomposition).
 */
template <typename Scalar>
std::optional<SiftResult<Scalar>> sift_one_imf(const Signal<Scalar>& x, const SiftConfig& cfg) {
  cfg.validate();
  if (x.size() < 3) return std::nullopt;
  Vector<Scalar> h = x.samples();
  int it = 0;
  while (it < cfg.max_sift_iterations) {
    const Signal<Scalar> current = x.with_samples(h);
    const auto env = build_envelopes(current);
    if (!env) {
      if (it == 0) return std::nullopt;
      break;
    }
    const Vector<Scalar>& m = env->mean.samples();
    const Scalar prev_norm = h.squaredNorm();
    h -= m;
    ++it;
    const Scalar sd = prev_norm > Scalar(0) ? m.squaredNorm() / prev_norm : Scalar(0);
    if (sd <= Scalar(cfg.sd_threshold)) break;
    if (is_imf(x.with_samples(h))) break;
  }
  Vector<Scalar> residue = x.samples() - h;
  return SiftResult<Scalar>{x.with_samples(std::move(h)), x.with_samples(std::move(residue)), it};
}

/// True once x is constant, monotone, or has a single maximum and minimum.
template <typename Scalar>
bool is_final_residue(const Signal<Scalar>& x) {
  if (x.size() < 3) return true;
  return detect_extrema(x).count() < kMinEnvelopeExtrema;
}

namespace detail {

inline int imf_cap(const SiftConfig& cfg) {
  return cfg.max_imfs > 0 ? cfg.max_imfs : kImfSafetyCap;
}

}  // namespace detail

/// Plain empirical mode decomposition.
template <typename Scalar>
Decomposition<Scalar> emd(const Signal<Scalar>& x, const SiftConfig& cfg = {}) {
  cfg.validate();
  std::vector<Signal<Scalar>> imfs;
  Signal<Scalar> work = x;
  const int cap = detail::imf_cap(cfg);
  while (static_cast<int>(imfs.size()) < cap && !is_final_residue(work)) {
    auto step = sift_one_imf(work, cfg);
    if (!step || step->imf.samples().squaredNorm() == Scalar(0)) break;
    imfs.push_back(std::move(step->imf));
    work = std::move(step->residue);
  }
  return Decomposition<Scalar>(std::move(imfs), std::move(work), Variant::EMD);
}

/// Seeded noise realization for one ensemble trial.
template <typename Scalar>
Vector<Scalar> eemd_trial_noise(Index length, Scalar stddev, std::uint64_t seed, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), 0x45454d44u};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector<Scalar> n(length);
  for (Index i = 0; i < length; ++i) n[i] = static_cast<Scalar>(normal(rng)) * stddev;
  return n;
}

/// EMD of x plus the noise realization of one ensemble trial.
template <typename Scalar>
Decomposition<Scalar> eemd_trial(const Signal<Scalar>& x, const SiftConfig& scfg,
                                 const EemdConfig& ecfg, int trial) {
  const Scalar sigma = Scalar(ecfg.noise_stddev_ratio) * stddev(x);
  if (sigma == Scalar(0)) return emd(x, scfg);
  return emd(x.with_samples(x.samples() + eemd_trial_noise(x.size(), sigma, ecfg.rng_seed, trial)),
             scfg);
}

/// Accumulates trial decompositions, zero-padding shorter IMF lists.
template <typename Scalar>
class EnsembleAverager {
 public:
  void add(const Decomposition<Scalar>& d) {
    if (!residue_sum_) {
      residue_sum_ = d.residue.samples();
    } else {
      *residue_sum_ += d.residue.samples();
    }
    if (!grid_) grid_ = d.residue;
    for (std::size_t k = 0; k < d.imfs.size(); ++k) {
      if (k == imf_sums_.size()) imf_sums_.push_back(Vector<Scalar>::Zero(d.residue.size()));
      imf_sums_[k] += d.imfs[k].samples();
    }
    ++count_;
  }

  Decomposition<Scalar> average() const {
    if (count_ == 0) throw InsufficientDataError("no ensemble trials to average");
    const Scalar inv = Scalar(1) / Scalar(count_);
    std::vector<Signal<Scalar>> imfs;
    imfs.reserve(imf_sums_.size());
    for (const auto& s : imf_sums_) imfs.push_back(grid_->with_samples(s * inv));
    return Decomposition<Scalar>(std::move(imfs), grid_->with_samples(*residue_sum_ * inv),
                                 Variant::EEMD);
  }

 private:
  std::vector<Vector<Scalar>> imf_sums_;
  std::optional<Vector<Scalar>> residue_sum_;
  std::optional<Signal<Scalar>> grid_;
  int count_ = 0;
};

/**
 * Ensemble EMD: averages the decompositions of x plus independent seeded
 * white-noise realizations. The result only approximately reconstructs x.
 */
template <typename Scalar>
Decomposition<Scalar> eemd(const Signal<Scalar>& x, const SiftConfig& scfg,
                           const EemdConfig& ecfg) {
  scfg.validate();
  ecfg.validate();
  EnsembleAverager<Scalar> avg;
  for (int trial = 0; trial < ecfg.ensemble_size; ++trial) {
    avg.add(eemd_trial(x, scfg, ecfg, trial));
  }
  return avg.average();
}

}  // namespace emdkit

#endif  // EMDKIT_EMD_HPP

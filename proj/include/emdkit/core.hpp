#ifndef EMDKIT_CORE_HPP
#define EMDKIT_CORE_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "emdkit/errors.hpp"

namespace emdkit {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/**
 * Uniformly sampled real time series.
 *
 * Immutable once constructed. The constructor rejects records shorter than
 * two samples, non-finite samples and non-positive or non-finite rates, so
 * every operation downstream may assume a valid record.
 */
template <typename Scalar>
class Signal {
 public:
  using VectorType = Vector<Scalar>;

  Signal(VectorType samples, Scalar sample_rate, Scalar t0 = Scalar(0))
      : samples_(std::move(samples)), sample_rate_(sample_rate), t0_(t0) {
    if (samples_.size() < 2) {
      throw InvalidSignalError("signal needs at least 2 samples, got " +
                               std::to_string(samples_.size()));
    }
    if (!std::isfinite(static_cast<double>(sample_rate_)) || !(sample_rate_ > Scalar(0))) {
      throw InvalidSignalError("sample rate must be finite and strictly positive");
    }
    if (!std::isfinite(static_cast<double>(t0_))) {
      throw InvalidSignalError("start time must be finite");
    }
    if (!samples_.allFinite()) {
      for (Index i = 0; i < samples_.size(); ++i) {
        if (!std::isfinite(static_cast<double>(samples_[i]))) {
          throw InvalidSignalError("non-finite sample at index " + std::to_string(i));
        }
      }
    }
  }

  /// Builds a signal from a std::vector, mostly for tests and I/O.
  static Signal from_std(const std::vector<Scalar>& values, Scalar sample_rate,
                         Scalar t0 = Scalar(0)) {
    VectorType v = Eigen::Map<const VectorType>(values.data(), static_cast<Index>(values.size()));
    return Signal(std::move(v), sample_rate, t0);
  }

  /// All-zero signal with the shape of `like`.
  static Signal zeros_like(const Signal& like) {
    return like.with_samples(VectorType::Zero(like.size()));
  }

  const VectorType& samples() const noexcept { return samples_; }
  Scalar operator[](Index i) const { return samples_[i]; }
  Index size() const noexcept { return samples_.size(); }
  Scalar sample_rate() const noexcept { return sample_rate_; }
  Scalar dt() const noexcept { return Scalar(1) / sample_rate_; }
  Scalar t0() const noexcept { return t0_; }
  Scalar duration() const noexcept { return Scalar(size()) / sample_rate_; }
  Scalar time_at(Index i) const noexcept { return t0_ + Scalar(i) / sample_rate_; }

  /// New signal on the same time grid with different samples.
  Signal with_samples(VectorType samples) const {
    if (samples.size() != size()) {
      throw DimensionError("with_samples: length " + std::to_string(samples.size()) +
                           " does not match " + std::to_string(size()));
    }
    return Signal(std::move(samples), sample_rate_, t0_);
  }

  bool same_grid(const Signal& other) const noexcept {
    return size() == other.size() && sample_rate_ == other.sample_rate_;
  }

 private:
  VectorType samples_;
  Scalar sample_rate_;
  Scalar t0_;
};

using SampledSignal = Signal<double>;

/// Which algorithm (and post-processing ordering) produced a decomposition.
enum class Variant { EMD, EEMD, EPEMD, OIMF, FOIMF, ROIMF, FOUIMF, ROUIMF };

inline std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::EMD: return "EMD";
    case Variant::EEMD: return "EEMD";
    case Variant::EPEMD: return "EPEMD";
    case Variant::OIMF: return "OIMF";
    case Variant::FOIMF: return "FOIMF";
    case Variant::ROIMF: return "ROIMF";
    case Variant::FOUIMF: return "FOUIMF";
    case Variant::ROUIMF: return "ROUIMF";
  }
  return "?";
}

inline std::optional<Variant> parse_variant(std::string_view s) {
  for (Variant v : {Variant::EMD, Variant::EEMD, Variant::EPEMD, Variant::OIMF, Variant::FOIMF,
                    Variant::ROIMF, Variant::FOUIMF, Variant::ROUIMF}) {
    const auto name = to_string(v);
    if (name.size() != s.size()) continue;
    bool eq = true;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      const char u = (c >= 'a' && c <= 'z') ? static_cast<char>(c - 'a' + 'A') : c;
      if (u != name[i]) {
        eq = false;
        break;
      }
    }
    if (eq) return v;
  }
  return std::nullopt;
}

/**
 * Ordered IMF list (highest frequency first) plus residue.
 *
 * The sum of all IMFs, the residue and `dc_constant` reconstructs the source
 * for every variant except EEMD, whose ensemble average only reconstructs it
 * approximately (see completeness_error()).
 */
template <typename Scalar>
struct Decomposition {
  std::vector<Signal<Scalar>> imfs;
  Signal<Scalar> residue;
  Variant variant = Variant::EMD;
  Scalar dc_constant = Scalar(0);

  Decomposition(std::vector<Signal<Scalar>> imfs_, Signal<Scalar> residue_, Variant variant_,
                Scalar dc = Scalar(0))
      : imfs(std::move(imfs_)), residue(std::move(residue_)), variant(variant_), dc_constant(dc) {
    for (const auto& imf : imfs) {
      if (!imf.same_grid(residue)) {
        throw DimensionError("decomposition members must share length and sample rate");
      }
    }
  }

  std::size_t imf_count() const noexcept { return imfs.size(); }

  /// IMFs followed by the residue.
  std::vector<Signal<Scalar>> components() const {
    std::vector<Signal<Scalar>> out = imfs;
    out.push_back(residue);
    return out;
  }
};

// --- inner products ---------------------------------------------------------

namespace detail {

inline void require_same_grid_sizes(Index a, Index b) {
  if (a != b) {
    throw DimensionError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace detail

/// Rectangle-rule inner product (sum a_i b_i) * dt of two sample vectors.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar inner_product(const Eigen::MatrixBase<DerivedA>& a,
                                        const Eigen::MatrixBase<DerivedB>& b,
                                        typename DerivedA::Scalar dt) {
  detail::require_same_grid_sizes(a.size(), b.size());
  return a.dot(b) * dt;
}

template <typename Scalar>
Scalar inner_product(const Signal<Scalar>& a, const Signal<Scalar>& b) {
  detail::require_same_grid_sizes(a.size(), b.size());
  if (a.sample_rate() != b.sample_rate()) {
    throw DimensionError("sample rate mismatch");
  }
  return a.samples().dot(b.samples()) * a.dt();
}

template <typename Scalar>
Scalar energy(const Signal<Scalar>& x) {
  return x.samples().squaredNorm() * x.dt();
}

template <typename Scalar>
Scalar mean(const Signal<Scalar>& x) {
  return x.samples().mean();
}

template <typename Scalar>
Scalar max_abs(const Signal<Scalar>& x) {
  return x.samples().cwiseAbs().maxCoeff();
}

/// Population standard deviation of the samples.
template <typename Scalar>
Scalar stddev(const Signal<Scalar>& x) {
  const Scalar m = x.samples().mean();
  return std::sqrt((x.samples().array() - m).square().mean());
}

/// Returns (x - m, m) with m the arithmetic mean of the samples.
template <typename Scalar>
std::pair<Signal<Scalar>, Scalar> remove_mean(const Signal<Scalar>& x) {
  const Scalar m = x.samples().mean();
  Vector<Scalar> centered = x.samples().array() - m;
  // A second pass removes the rounding left by the first one.
  const Scalar m2 = centered.mean();
  centered.array() -= m2;
  return {x.with_samples(std::move(centered)), m + m2};
}

// --- elementwise helpers ----------------------------------------------------

template <typename Scalar>
Signal<Scalar> operator+(const Signal<Scalar>& a, const Signal<Scalar>& b) {
  if (!a.same_grid(b)) throw DimensionError("operator+: grid mismatch");
  return a.with_samples(a.samples() + b.samples());
}

template <typename Scalar>
Signal<Scalar> operator-(const Signal<Scalar>& a, const Signal<Scalar>& b) {
  if (!a.same_grid(b)) throw DimensionError("operator-: grid mismatch");
  return a.with_samples(a.samples() - b.samples());
}

template <typename Scalar>
Signal<Scalar> operator*(Scalar k, const Signal<Scalar>& a) {
  return a.with_samples(k * a.samples());
}

/// Sum of a list of equally shaped signals.
template <typename Scalar>
Vector<Scalar> sum_samples(const std::vector<Signal<Scalar>>& parts) {
  if (parts.empty()) throw InsufficientDataError("sum of an empty component list");
  Vector<Scalar> acc = parts.front().samples();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    detail::require_same_grid_sizes(acc.size(), parts[i].size());
    acc += parts[i].samples();
  }
  return acc;
}

/// Elementwise sum of IMFs, residue and dc constant.
template <typename Scalar>
Signal<Scalar> reconstruct(const Decomposition<Scalar>& d) {
  Vector<Scalar> acc = d.residue.samples();
  for (const auto& imf : d.imfs) acc += imf.samples();
  acc.array() += d.dc_constant;
  return d.residue.with_samples(std::move(acc));
}

/// max|x - reconstruct(d)| / max|x| (absolute when x is identically zero).
template <typename Scalar>
Scalar completeness_error(const Signal<Scalar>& x, const Decomposition<Scalar>& d) {
  if (!x.same_grid(d.residue)) throw DimensionError("completeness_error: grid mismatch");
  const Scalar err = (x.samples() - reconstruct(d).samples()).cwiseAbs().maxCoeff();
  const Scalar scale = max_abs(x);
  return scale > Scalar(0) ? err / scale : err;
}

}  // namespace emdkit

#endif  // EMDKIT_CORE_HPP

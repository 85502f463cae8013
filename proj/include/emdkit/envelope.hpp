#ifndef EMDKIT_ENVELOPE_HPP
#define EMDKIT_ENVELOPE_HPP

#include <algorithm>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "emdkit/core.hpp"

namespace emdkit {

template <typename Scalar>
struct Extremum {
  Index index;
  Scalar value;
};

/// Interior local maxima and minima, indices strictly increasing.
template <typename Scalar>
struct ExtremaSet {
  std::vector<Extremum<Scalar>> maxima;
  std::vector<Extremum<Scalar>> minima;

  std::size_t count() const noexcept { return maxima.size() + minima.size(); }
};

/**
 * Strict interior extrema of a sample vector.
 *
 * A plateau of equal values bounded by smaller (larger) neighbours counts as
 * one maximum (minimum) located at its centre sample. Runs touching either
 * end of the record are never extrema.
 */
template <typename Derived>
ExtremaSet<typename Derived::Scalar> detect_extrema(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  const Index n = x.size();
  if (n < 3) {
    throw InsufficientDataError("detect_extrema needs at least 3 samples");
  }
  ExtremaSet<Scalar> out;
  Index i = 1;
  while (i < n && x[i] == x[0]) ++i;
  while (i < n - 1) {
    Index j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    if (j == n - 1) break;
    const Scalar v = x[i];
    const Scalar left = x[i - 1];
    const Scalar right = x[j + 1];
    const Index centre = i + (j - i) / 2;
    if (v > left && v > right) {
      out.maxima.push_back({centre, v});
    } else if (v < left && v < right) {
      out.minima.push_back({centre, v});
    }
    i = j + 1;
  }
  return out;
}

template <typename Scalar>
ExtremaSet<Scalar> detect_extrema(const Signal<Scalar>& x) {
  return detect_extrema(x.samples());
}

/// Sign changes between consecutive non-zero samples; zero runs are skipped.
template <typename Derived>
Index count_zero_crossings(const Eigen::MatrixBase<Derived>& x) {
  using Scalar = typename Derived::Scalar;
  Index crossings = 0;
  int last_sign = 0;
  for (Index i = 0; i < x.size(); ++i) {
    const Scalar v = x[i];
    const int s = (v > Scalar(0)) - (v < Scalar(0));
    if (s == 0) continue;
    if (last_sign != 0 && s != last_sign) ++crossings;
    last_sign = s;
  }
  return crossings;
}

template <typename Scalar>
Index count_zero_crossings(const Signal<Scalar>& x) {
  return count_zero_crossings(x.samples());
}

/**
 * Natural cubic spline (zero second derivative at both end knots).
 *
 * Values may have several columns sharing the same abscissae; the
 * tridiagonal system is factored once and solved for all of them, which is
 * how multivariate envelopes interpolate every channel at common instants.
 */
template <typename Scalar>
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(Vector<Scalar> knots, Matrix<Scalar> values)
      : t_(std::move(knots)), y_(std::move(values)) {
    const Index k = t_.size();
    if (k < 2) throw InvalidKnotsError("cubic spline needs at least 2 knots");
    if (y_.rows() != k) throw DimensionError("spline knot/value count mismatch");
    for (Index i = 1; i < k; ++i) {
      if (!(t_[i] > t_[i - 1])) {
        throw InvalidKnotsError("spline knots must be strictly increasing");
      }
    }
    m_ = Matrix<Scalar>::Zero(k, y_.cols());
    if (k == 2) return;

    // Thomas algorithm on the interior second derivatives.
    const Index inner = k - 2;
    Vector<Scalar> c_prime(inner);
    Matrix<Scalar> d_prime(inner, y_.cols());
    for (Index r = 0; r < inner; ++r) {
      const Index i = r + 1;
      const Scalar h0 = t_[i] - t_[i - 1];
      const Scalar h1 = t_[i + 1] - t_[i];
      const Scalar diag = Scalar(2) * (h0 + h1);
      const auto rhs = (Scalar(6) * ((y_.row(i + 1) - y_.row(i)) / h1 -
                                     (y_.row(i) - y_.row(i - 1)) / h0))
                           .eval();
      if (r == 0) {
        c_prime[r] = h1 / diag;
        d_prime.row(r) = rhs / diag;
      } else {
        const Scalar denom = diag - h0 * c_prime[r - 1];
        c_prime[r] = h1 / denom;
        d_prime.row(r) = (rhs - h0 * d_prime.row(r - 1)) / denom;
      }
    }
    m_.row(inner) = d_prime.row(inner - 1);
    for (Index r = inner - 2; r >= 0; --r) {
      m_.row(r + 1) = d_prime.row(r) - c_prime[r] * m_.row(r + 2);
    }
  }

  Index knot_count() const noexcept { return t_.size(); }
  Index columns() const noexcept { return y_.cols(); }
  const Matrix<Scalar>& second_derivatives() const noexcept { return m_; }

  /// Evaluates every column at each query abscissa (rows = queries).
  Matrix<Scalar> evaluate(const Vector<Scalar>& query) const {
    Matrix<Scalar> out(query.size(), y_.cols());
    Index seg = 0;
    for (Index q = 0; q < query.size(); ++q) {
      const Scalar tq = query[q];
      // Queries are usually ascending; fall back to bisection otherwise.
      if (!(tq >= t_[seg] && tq <= t_[seg + 1])) seg = locate(tq);
      eval_row(seg, tq, out.row(q));
    }
    return out;
  }

  /// Evaluates on the integer grid 0, 1, ..., n-1.
  Matrix<Scalar> evaluate_grid(Index n) const {
    return evaluate(Vector<Scalar>::LinSpaced(n, Scalar(0), Scalar(n - 1)));
  }

 private:
  Index locate(Scalar tq) const {
    const Index k = t_.size();
    const auto* begin = t_.data();
    const auto* it = std::upper_bound(begin, begin + k, tq);
    Index seg = static_cast<Index>(it - begin) - 1;
    return std::clamp<Index>(seg, 0, k - 2);
  }

  template <typename Row>
  void eval_row(Index i, Scalar tq, Row&& row) const {
    const Scalar h = t_[i + 1] - t_[i];
    const Scalar a = t_[i + 1] - tq;
    const Scalar b = tq - t_[i];
    row = m_.row(i) * (a * a * a / (Scalar(6) * h)) + m_.row(i + 1) * (b * b * b / (Scalar(6) * h)) +
          (y_.row(i) / h - m_.row(i) * (h / Scalar(6))) * a +
          (y_.row(i + 1) / h - m_.row(i + 1) * (h / Scalar(6))) * b;
  }

  Vector<Scalar> t_;
  Matrix<Scalar> y_;
  Matrix<Scalar> m_;
};

/// Natural cubic spline through (knots_t, knots_v) evaluated at query_t.
template <typename Scalar>
std::vector<Scalar> cubic_spline(const std::vector<Scalar>& knots_t,
                                 const std::vector<Scalar>& knots_v,
                                 const std::vector<Scalar>& query_t) {
  if (knots_t.size() != knots_v.size()) throw DimensionError("knot abscissa/value count mismatch");
  const Index k = static_cast<Index>(knots_t.size());
  Vector<Scalar> t = Eigen::Map<const Vector<Scalar>>(knots_t.data(), k);
  Matrix<Scalar> v = Eigen::Map<const Vector<Scalar>>(knots_v.data(), k);
  NaturalCubicSpline<Scalar> spline(std::move(t), std::move(v));
  Vector<Scalar> q =
      Eigen::Map<const Vector<Scalar>>(query_t.data(), static_cast<Index>(query_t.size()));
  const Matrix<Scalar> r = spline.evaluate(q);
  return std::vector<Scalar>(r.data(), r.data() + r.size());
}

/// Knot abscissae after mirror extension plus the sample each knot copies.
struct MirroredKnots {
  std::vector<double> t;
  std::vector<Index> source;
};

/**
 * Reflects the two extrema nearest each end of a record of length n about
 * that end sample, so the envelope spline covers [0, n-1].
 */
inline MirroredKnots mirror_extend(const std::vector<Index>& idx, Index n) {
  MirroredKnots k;
  const std::size_t m = idx.size();
  const std::size_t reflect = std::min<std::size_t>(2, m);
  k.t.reserve(m + 2 * reflect);
  k.source.reserve(m + 2 * reflect);
  for (std::size_t r = reflect; r-- > 0;) {
    k.t.push_back(-static_cast<double>(idx[r]));
    k.source.push_back(idx[r]);
  }
  for (Index i : idx) {
    k.t.push_back(static_cast<double>(i));
    k.source.push_back(i);
  }
  for (std::size_t r = 0; r < reflect; ++r) {
    const Index i = idx[m - 1 - r];
    k.t.push_back(2.0 * static_cast<double>(n - 1) - static_cast<double>(i));
    k.source.push_back(i);
  }
  return k;
}

/**
 * Spline through the rows of `values` taken at the given extremum instants,
 * mirror-extended, evaluated at every sample. `values` has one column per
 * channel and one row per sample.
 */
template <typename Scalar>
Matrix<Scalar> envelope_through(const std::vector<Index>& instants, const Matrix<Scalar>& values) {
  const Index n = values.rows();
  const MirroredKnots mk = mirror_extend(instants, n);
  const Index k = static_cast<Index>(mk.t.size());
  Vector<Scalar> t(k);
  Matrix<Scalar> v(k, values.cols());
  for (Index i = 0; i < k; ++i) {
    t[i] = static_cast<Scalar>(mk.t[static_cast<std::size_t>(i)]);
    v.row(i) = values.row(mk.source[static_cast<std::size_t>(i)]);
  }
  return NaturalCubicSpline<Scalar>(std::move(t), std::move(v)).evaluate_grid(n);
}

/// Minimum total extrema count for an envelope (and another sifting pass).
inline constexpr std::size_t kMinEnvelopeExtrema = 3;

template <typename Scalar>
struct EnvelopePair {
  Signal<Scalar> upper;
  Signal<Scalar> lower;
  Signal<Scalar> mean;
};

template <typename Scalar>
std::vector<Index> indices_of(const std::vector<Extremum<Scalar>>& ex) {
  std::vector<Index> out;
  out.reserve(ex.size());
  for (const auto& e : ex) out.push_back(e.index);
  return out;
}

/**
 * Upper/lower cubic-spline envelopes and their mean.
 *
 * Returns nullopt when x has fewer than three interior extrema; the caller
 * then treats x as a final residue. The two envelopes may cross.
 */
template <typename Scalar>
std::optional<EnvelopePair<Scalar>> build_envelopes(const Signal<Scalar>& x,
                                                    const ExtremaSet<Scalar>& ex) {
  if (ex.count() < kMinEnvelopeExtrema || ex.maxima.empty() || ex.minima.empty()) {
    return std::nullopt;
  }
  const Matrix<Scalar> column = x.samples();
  Vector<Scalar> upper = envelope_through(indices_of(ex.maxima), column).col(0);
  Vector<Scalar> lower = envelope_through(indices_of(ex.minima), column).col(0);
  Vector<Scalar> mid = Scalar(0.5) * (upper + lower);
  return EnvelopePair<Scalar>{x.with_samples(std::move(upper)), x.with_samples(std::move(lower)),
                              x.with_samples(std::move(mid))};
}

template <typename Scalar>
std::optional<EnvelopePair<Scalar>> build_envelopes(const Signal<Scalar>& x) {
  if (x.size() < 3) return std::nullopt;
  return build_envelopes(x, detect_extrema(x));
}

}  // namespace emdkit

#endif  // EMDKIT_ENVELOPE_HPP

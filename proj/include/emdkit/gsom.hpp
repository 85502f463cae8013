#ifndef EMDKIT_GSOM_HPP
#define EMDKIT_GSOM_HPP

#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/emd.hpp"

namespace emdkit {

/// Minimum residual energy, relative to the input's own energy, of each new
/// orthogonal direction.
inline constexpr double kRankTolerance = 1e-12;

/**
 * Output of a Gram-Schmidt sweep.
 *
 * `coefficient_matrix` is lower unitriangular with y_k = s_k + sum_{i<k} c_ki s_i;
 * `column_sums` c_i are its column sums and the returned components are
 * p_i = c_i s_i, which sum to the sum of the inputs.
 */
template <typename Scalar>
struct GsomResult {
  std::vector<Signal<Scalar>> orthogonal_components;
  std::vector<Signal<Scalar>> basis;  // the raw s_i
  Matrix<Scalar> coefficient_matrix;
  Vector<Scalar> column_sums;
  Scalar dc_constant = Scalar(0);
};

/**
 * Modified Gram-Schmidt with one re-orthogonalization pass, in input order.
 * Throws RankDeficiencyError naming the first input that is numerically
 * dependent on its predecessors.
 */
template <typename Scalar>
GsomResult<Scalar> gram_schmidt(const std::vector<Signal<Scalar>>& inputs) {
  const std::size_t n = inputs.size();
  if (n == 0) throw InsufficientDataError("gram_schmidt needs at least one input");
  for (const auto& y : inputs) {
    if (!y.same_grid(inputs.front())) throw DimensionError("gram_schmidt: shape mismatch");
  }
  const Index len = inputs.front().size();
  const Index cols = static_cast<Index>(n);
  Matrix<Scalar> s(len, cols);
  Vector<Scalar> s_norm2(cols);
  Matrix<Scalar> coeff = Matrix<Scalar>::Identity(cols, cols);

  for (Index k = 0; k < cols; ++k) {
    const auto& yk = inputs[static_cast<std::size_t>(k)].samples();
    Vector<Scalar> v = yk;
    for (int pass = 0; pass < 2; ++pass) {
      for (Index i = 0; i < k; ++i) {
        const Scalar c = s.col(i).dot(v) / s_norm2[i];
        v -= c * s.col(i);
        coeff(k, i) += c;
      }
    }
    const Scalar vv = v.squaredNorm();
    const Scalar yy = yk.squaredNorm();
    if (!(vv > Scalar(kRankTolerance) * yy) || vv == Scalar(0)) {
      throw RankDeficiencyError("input " + std::to_string(k) +
                                    " is linearly dependent on the preceding inputs",
                                static_cast<std::size_t>(k));
    }
    s.col(k) = v;
    s_norm2[k] = vv;
  }

  GsomResult<Scalar> out;
  out.column_sums = coeff.colwise().sum().transpose();
  out.orthogonal_components.reserve(n);
  out.basis.reserve(n);
  const auto& grid = inputs.front();
  for (Index i = 0; i < cols; ++i) {
    out.basis.push_back(grid.with_samples(s.col(i)));
    out.orthogonal_components.push_back(grid.with_samples(out.column_sums[i] * s.col(i)));
  }
  out.coefficient_matrix = std::move(coeff);
  return out;
}

inline bool is_orthogonal_variant(Variant v) {
  return v == Variant::OIMF || v == Variant::FOIMF || v == Variant::ROIMF ||
         v == Variant::FOUIMF || v == Variant::ROUIMF;
}

/**
 * Re-expresses a decomposition as one of the Gram-Schmidt orderings:
 *
 *   OIMF    IMFs only, highest to lowest frequency; residue kept as is
 *   FOIMF   IMFs then residue
 *   ROIMF   residue then IMFs from lowest to highest frequency
 *   FOUIMF  as FOIMF on mean-removed inputs, means collected in dc_constant
 *   ROUIMF  as ROIMF on mean-removed inputs
 *
 * Outputs are relabelled into IMF-first order.
 */
template <typename Scalar>
Decomposition<Scalar> orthogonal_variants(const Decomposition<Scalar>& d, Variant variant) {
  if (!is_orthogonal_variant(variant)) {
    throw InvalidConfigError("orthogonal_variants: " + std::string(to_string(variant)) +
                             " is not an orthogonalization ordering");
  }
  const std::size_t n = d.imfs.size();
  if (variant == Variant::OIMF) {
    if (n == 0) return Decomposition<Scalar>({}, d.residue, variant, d.dc_constant);
    auto gs = gram_schmidt(d.imfs);
    return Decomposition<Scalar>(std::move(gs.orthogonal_components), d.residue, variant,
                                 d.dc_constant);
  }

  const bool uncorrelated = variant == Variant::FOUIMF || variant == Variant::ROUIMF;
  const bool reverse = variant == Variant::ROIMF || variant == Variant::ROUIMF;
  Scalar dc = d.dc_constant;
  auto prepare = [&](const Signal<Scalar>& s) {
    if (!uncorrelated) return s;
    auto [centred, m] = remove_mean(s);
    dc += m;
    return centred;
  };

  std::vector<Signal<Scalar>> inputs;
  inputs.reserve(n + 1);
  if (reverse) {
    inputs.push_back(prepare(d.residue));
    for (std::size_t i = n; i-- > 0;) inputs.push_back(prepare(d.imfs[i]));
  } else {
    for (const auto& imf : d.imfs) inputs.push_back(prepare(imf));
    inputs.push_back(prepare(d.residue));
  }

  auto gs = gram_schmidt(inputs);
  auto& p = gs.orthogonal_components;
  std::vector<Signal<Scalar>> imfs;
  imfs.reserve(n);
  if (reverse) {
    for (std::size_t i = 0; i < n; ++i) imfs.push_back(std::move(p[n - i]));
    return Decomposition<Scalar>(std::move(imfs), std::move(p[0]), variant, dc);
  }
  for (std::size_t i = 0; i < n; ++i) imfs.push_back(std::move(p[i]));
  return Decomposition<Scalar>(std::move(imfs), std::move(p[n]), variant, dc);
}

/// is_imf() of every component, in order.
template <typename Scalar>
std::vector<bool> imf_property_report(const std::vector<Signal<Scalar>>& components) {
  std::vector<bool> out;
  out.reserve(components.size());
  for (const auto& c : components) out.push_back(is_imf(c));
  return out;
}

}  // namespace emdkit

#endif  // EMDKIT_GSOM_HPP

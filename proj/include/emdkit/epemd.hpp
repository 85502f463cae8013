#ifndef EMDKIT_EPEMD_HPP
#define EMDKIT_EPEMD_HPP

#include <algorithm>
#include <cmath>
#include <vector>

#include "emdkit/core.hpp"
#include "emdkit/emd.hpp"
#include "emdkit/memd.hpp"

namespace emdkit {

/// Residue energy, relative to the reference energy, treated as zero.
inline constexpr double kZeroResidueEnergy = 1e-14;

/// Relative tolerance of the chain-orthogonality and energy checks.
inline constexpr double kLinoepTolerance = 1e-9;

/**
 * One stage of the energy-preserving chain.
 *
 * epimf + residue_out equals the stage input and the two are orthogonal.
 * `orthogonalized` is false when the residue had (numerically) no energy and
 * the pair was passed through unchanged.
 */
template <typename Scalar>
struct LinoepStage {
  Scalar alpha;
  Signal<Scalar> epimf;
  Signal<Scalar> residue_out;
  bool orthogonalized = true;
};

/**
 * Splits imf + residue into c = imf - alpha*residue and
 * c' = (1 + alpha)*residue with alpha = <imf, r>/<r, r>, so c is orthogonal
 * to c'. `reference_energy` scales the zero-residue gate; it defaults to the
 * energy of the stage input.
 */
template <typename Scalar>
LinoepStage<Scalar> orthogonalize_stage(const Signal<Scalar>& imf, const Signal<Scalar>& residue,
                                        Scalar reference_energy = Scalar(-1)) {
  if (!imf.same_grid(residue)) throw DimensionError("orthogonalize_stage: grid mismatch");
  const Scalar rr = energy(residue);
  if (reference_energy < Scalar(0)) reference_energy = energy(imf + residue);
  if (!(rr > Scalar(kZeroResidueEnergy) * reference_energy) || rr == Scalar(0)) {
    return {Scalar(0), imf, residue, false};
  }
  const Scalar alpha = inner_product(imf, residue) / rr;
  Vector<Scalar> c = imf.samples() - alpha * residue.samples();
  Vector<Scalar> c_next = (Scalar(1) + alpha) * residue.samples();
  return {alpha, imf.with_samples(std::move(c)), residue.with_samples(std::move(c_next)), true};
}

/**
 * Energy-preserving EMD. Each stage sifts one IMF from the working signal,
 * orthogonalizes it against its residue and continues on the rescaled
 * residue. Components satisfy c_i orthogonal to sum_{j>i} c_j, hence the sum
 * of component energies equals the signal energy.
 */
template <typename Scalar>
Decomposition<Scalar> epemd(const Signal<Scalar>& x, const SiftConfig& cfg = {}) {
  cfg.validate();
  const Scalar ex = energy(x);
  std::vector<Signal<Scalar>> comps;
  Signal<Scalar> work = x;
  const int cap = detail::imf_cap(cfg);
  while (static_cast<int>(comps.size()) < cap && !is_final_residue(work)) {
    auto step = sift_one_imf(work, cfg);
    if (!step || step->imf.samples().squaredNorm() == Scalar(0)) break;
    auto stage = orthogonalize_stage(step->imf, step->residue, ex);
    comps.push_back(std::move(stage.epimf));
    work = std::move(stage.residue_out);
  }
  return Decomposition<Scalar>(std::move(comps), std::move(work), Variant::EPEMD);
}

/**
 * Checks the chain condition x_i orthogonal to sum_{j>i} x_j and the
 * resulting energy identity, both relative to the total energy.
 */
template <typename Scalar>
bool verify_linoep(const std::vector<Signal<Scalar>>& components) {
  if (components.size() < 2) throw InsufficientDataError("verify_linoep needs >= 2 components");
  for (const auto& c : components) {
    if (!c.same_grid(components.front())) throw DimensionError("verify_linoep: shape mismatch");
  }
  const Scalar dt = components.front().dt();
  const std::size_t n = components.size();
  // suffix[i] = sum of components i..n-1
  std::vector<Vector<Scalar>> suffix(n);
  suffix[n - 1] = components[n - 1].samples();
  for (std::size_t i = n - 1; i-- > 0;) suffix[i] = suffix[i + 1] + components[i].samples();

  Scalar sum_energy = 0;
  for (const auto& c : components) sum_energy += energy(c);
  const Scalar total_energy = suffix[0].squaredNorm() * dt;
  const Scalar scale = std::max(total_energy, sum_energy);
  if (scale == Scalar(0)) return true;
  const Scalar tol = Scalar(kLinoepTolerance) * scale;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(components[i].samples().dot(suffix[i + 1]) * dt) > tol) return false;
  }
  return std::abs(sum_energy - total_energy) <= tol;
}

template <typename Scalar>
bool verify_linoep(const Decomposition<Scalar>& d) {
  return verify_linoep(d.components());
}

/// Energy-preserving multivariate EMD: per-channel chain on MEMD stages.
template <typename Scalar>
MultivariateDecomposition<Scalar> epmemd(const MultivariateSignal<Scalar>& x,
                                         Index K = kDefaultDirections, const SiftConfig& cfg = {}) {
  cfg.validate();
  const auto dirs = hammersley_directions<Scalar>(x.channel_count(), K);
  const Index channels = x.channel_count();
  std::vector<Scalar> channel_energy(static_cast<std::size_t>(channels));
  for (Index j = 0; j < channels; ++j) {
    channel_energy[static_cast<std::size_t>(j)] = energy(x.channel(j));
  }

  std::vector<MultivariateSignal<Scalar>> comps;
  Matrix<Scalar> work = x.data();
  const int cap = detail::imf_cap(cfg);
  while (static_cast<int>(comps.size()) < cap) {
    auto mode = extract_multivariate_mode(work, dirs, cfg);
    if (!mode || mode->squaredNorm() == Scalar(0)) break;
    const Matrix<Scalar> residue = work - *mode;
    Matrix<Scalar> c(work.rows(), channels);
    for (Index j = 0; j < channels; ++j) {
      const Signal<Scalar> y(mode->col(j), x.sample_rate(), x.t0());
      const Signal<Scalar> r(residue.col(j), x.sample_rate(), x.t0());
      auto stage = orthogonalize_stage(y, r, channel_energy[static_cast<std::size_t>(j)]);
      c.col(j) = stage.epimf.samples();
      work.col(j) = stage.residue_out.samples();
    }
    comps.push_back(x.with_data(std::move(c)));
  }
  return MultivariateDecomposition<Scalar>{std::move(comps), x.with_data(std::move(work)),
                                           Variant::EPEMD};
}

}  // namespace emdkit

#endif  // EMDKIT_EPEMD_HPP

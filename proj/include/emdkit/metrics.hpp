#ifndef EMDKIT_METRICS_HPP
#define EMDKIT_METRICS_HPP

#include <cmath>
#include <vector>

#include "emdkit/core.hpp"

namespace emdkit {

/**
 * Orthogonality and energy-leakage diagnostics of a decomposition.
 *
 * Components are the IMFs, then the residue, then (when non-zero) the dc
 * constant as a constant signal. `io_total` and `pee` are normalized by the
 * energy of the source signal; the `_reconstructed` pair is normalized by the
 * energy of the component sum instead, which is what makes
 * pee = 100 * io_total an identity for inexact decompositions (EEMD).
 */
template <typename Scalar>
struct OrthoReport {
  Matrix<Scalar> leakage_matrix;  // E_jk, symmetric, energies on the diagonal
  Matrix<Scalar> io_pairs;        // IO_jk, zero diagonal
  Vector<Scalar> component_energies;
  Scalar signal_energy = 0;
  Scalar total_component_energy = 0;  // E_emd
  Scalar io_total = 0;
  Scalar pee = 0;  // percent, signed
  Scalar reconstructed_energy = 0;
  Scalar io_total_reconstructed = 0;
  Scalar pee_reconstructed = 0;
  Scalar reconstruction_error = 0;  // max-norm, relative to max|x|
  bool has_dc_component = false;
};

template <typename Scalar>
OrthoReport<Scalar> ortho_report(const Signal<Scalar>& x, const std::vector<Signal<Scalar>>& parts,
                                 Scalar dc_constant = Scalar(0)) {
  if (parts.empty()) throw InsufficientDataError("ortho_report needs at least one component");
  for (const auto& p : parts) {
    if (!p.same_grid(x)) throw DimensionError("ortho_report: component shape does not match signal");
  }
  const Index len = x.size();
  const bool with_dc = dc_constant != Scalar(0);
  const Index n = static_cast<Index>(parts.size()) + (with_dc ? 1 : 0);
  Matrix<Scalar> comps(len, n);
  for (std::size_t i = 0; i < parts.size(); ++i) comps.col(static_cast<Index>(i)) = parts[i].samples();
  if (with_dc) comps.col(n - 1).setConstant(dc_constant);

  const Scalar dt = x.dt();
  OrthoReport<Scalar> r;
  r.has_dc_component = with_dc;
  r.signal_energy = energy(x);
  if (!(r.signal_energy > Scalar(0))) {
    throw UndefinedRatioError("signal has zero energy; orthogonality ratios are undefined");
  }
  r.leakage_matrix = (comps.transpose() * comps) * dt;
  r.leakage_matrix = Scalar(0.5) * (r.leakage_matrix + r.leakage_matrix.transpose()).eval();
  r.component_energies = r.leakage_matrix.diagonal();
  r.total_component_energy = r.component_energies.sum();
  Scalar cross = 0;
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      if (j != k) cross += r.leakage_matrix(j, k);
    }
  }

  r.io_total = cross / r.signal_energy;
  r.pee = (r.signal_energy - r.total_component_energy) / r.signal_energy * Scalar(100);

  r.reconstructed_energy = r.total_component_energy + cross;
  if (r.reconstructed_energy > Scalar(0)) {
    r.io_total_reconstructed = cross / r.reconstructed_energy;
    r.pee_reconstructed = (r.reconstructed_energy - r.total_component_energy) /
                          r.reconstructed_energy * Scalar(100);
  }

  r.io_pairs = Matrix<Scalar>::Zero(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index k = 0; k < n; ++k) {
      if (j == k) continue;
      const Scalar denom = r.leakage_matrix(j, j) + r.leakage_matrix(k, k);
      r.io_pairs(j, k) = denom > Scalar(0) ? r.leakage_matrix(j, k) / denom : Scalar(0);
    }
  }

  const Vector<Scalar> sum = comps.rowwise().sum();
  const Scalar scale = max_abs(x);
  r.reconstruction_error = (x.samples() - sum).cwiseAbs().maxCoeff() / scale;
  return r;
}

/// Report for a decomposition of x; the residue is component n+1.
template <typename Scalar>
OrthoReport<Scalar> ortho_report(const Signal<Scalar>& x, const Decomposition<Scalar>& d) {
  return ortho_report(x, d.components(), d.dc_constant);
}

/// |Pee - 100 IO_T| evaluated on the component sum.
template <typename Scalar>
Scalar pee_identity_check(const OrthoReport<Scalar>& report) {
  return std::abs(report.pee_reconstructed - Scalar(100) * report.io_total_reconstructed);
}

}  // namespace emdkit

#endif  // EMDKIT_METRICS_HPP

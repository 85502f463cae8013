#ifndef EMDKIT_DECOMPOSE_HPP
#define EMDKIT_DECOMPOSE_HPP

#include "emdkit/core.hpp"
#include "emdkit/emd.hpp"
#include "emdkit/epemd.hpp"
#include "emdkit/gsom.hpp"

namespace emdkit {

/// Univariate decomposition selected by variant; orderings run on plain EMD.
template <typename Scalar>
Decomposition<Scalar> decompose(const Signal<Scalar>& x, Variant variant,
                                const SiftConfig& scfg = {}, const EemdConfig& ecfg = {}) {
  switch (variant) {
    case Variant::EMD: return emd(x, scfg);
    case Variant::EEMD: return eemd(x, scfg, ecfg);
    case Variant::EPEMD: return epemd(x, scfg);
    default: return orthogonal_variants(emd(x, scfg), variant);
  }
}

}  // namespace emdkit

#endif  // EMDKIT_DECOMPOSE_HPP

#ifndef EMDKIT_EMDKIT_HPP
#define EMDKIT_EMDKIT_HPP

#include "emdkit/core.hpp"
#include "emdkit/decompose.hpp"
#include "emdkit/emd.hpp"
#include "emdkit/envelope.hpp"
#include "emdkit/epemd.hpp"
#include "emdkit/errors.hpp"
#include "emdkit/gsom.hpp"
#include "emdkit/hsa.hpp"
#include "emdkit/memd.hpp"
#include "emdkit/metrics.hpp"
#include "emdkit/siggen.hpp"
#include "emdkit/significance.hpp"

#endif  // EMDKIT_EMDKIT_HPP

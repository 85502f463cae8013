#ifndef EMDKIT_TESTS_TEST_UTIL_HPP
#define EMDKIT_TESTS_TEST_UTIL_HPP

#include <vector>

#include "emdkit/core.hpp"
#include "oracles.hpp"

namespace testutil {

inline emdkit::Signal<double> sig(const oracle::Vec& v, double fs = 1.0) {
  return emdkit::Signal<double>::from_std(v, fs);
}

inline oracle::Vec vec(const emdkit::Signal<double>& s) {
  return {s.samples().data(), s.samples().data() + s.size()};
}

inline oracle::Vec vec(const emdkit::Vector<double>& v) { return {v.data(), v.data() + v.size()}; }

/// Indices of the central `fraction` of n samples.
struct Range {
  emdkit::Index begin;
  emdkit::Index end;
};

inline Range central(emdkit::Index n, double fraction = 0.8) {
  const auto skip = static_cast<emdkit::Index>(n * (1.0 - fraction) / 2.0);
  return {skip, n - skip};
}

}  // namespace testutil

#endif  // EMDKIT_TESTS_TEST_UTIL_HPP

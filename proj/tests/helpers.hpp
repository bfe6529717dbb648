#pragma once

#include "qmaps/kinematics.hpp"

#include <cmath>
#include <complex>

namespace testing {

using qmaps::Complex;
using qmaps::ComplexMatrix;

inline double max_abs(const ComplexMatrix& a) { return a.cwiseAbs().maxCoeff(); }

// Distance between a and b after removing the best global phase.
inline double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  const Complex overlap = (b.adjoint() * a).trace();
  const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
  return max_abs(a - phase * b);
}

// Slow textbook matrix power by repeated multiplication.
inline ComplexMatrix naive_power(const ComplexMatrix& a, long k) {
  ComplexMatrix base = k >= 0 ? a : ComplexMatrix(a.adjoint());
  ComplexMatrix out = ComplexMatrix::Identity(a.rows(), a.cols());
  for (long i = 0; i < std::abs(k); ++i)
    out = out * base;
  return out;
}

} // namespace testing

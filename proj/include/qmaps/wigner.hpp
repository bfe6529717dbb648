#pragma once

// Discrete Wigner function on the 2N x 2N lattice. Lattice point (q, p)
// sits at phase-space location (q/2N, p/2N); position eigenvalues
// (n + 1/2)/N therefore fall on the odd columns q = 2n + 1.
//
// Normalization: the point operators A(q, p) as defined below sum to -I over
// the full lattice, so the grid is W(q, p) = -Re Tr(rho A(q, p)). With this
// sign the grid sums to Tr rho and a position eigenstate is nonnegative on
// its own column.

#include "qmaps/channel.hpp"
#include "qmaps/kinematics.hpp"

namespace qmaps {

class WignerGrid {
public:
  WignerGrid(PhaseSpaceSpec spec, RealMatrix values, double imag_residue = 0.0);

  const PhaseSpaceSpec& spec() const noexcept { return spec_; }
  /// 2N x 2N, indexed (q, p).
  const RealMatrix& values() const noexcept { return values_; }
  int side() const noexcept { return static_cast<int>(values_.rows()); }
  double operator()(int q, int p) const { return values_(q, p); }
  /// Largest discarded imaginary part seen while building the grid.
  double imag_residue() const noexcept { return imag_residue_; }
  double sum() const { return values_.sum(); }

private:
  PhaseSpaceSpec spec_;
  RealMatrix values_;
  double imag_residue_;
};

struct PointOperator {
  int q;
  int p;
  OperatorMatrix matrix;
};

/// Index reversal R|q_n> = |q_{N-1-n}>.
OperatorMatrix reflection_operator(const PhaseSpaceSpec& spec);

/// A(q, p) = (1/2N) U^q R V^{-p} exp(i pi q p / N), 0 <= q, p < 2N.
PointOperator point_operator(const PhaseSpaceSpec& spec, int q, int p);

/// FFT evaluation of the closed double-sum formula. Requires antiperiodic
/// Floquet angles.
WignerGrid wigner_transform(const DensityMatrix& rho, const PhaseSpaceSpec& spec);

/// Reference evaluation -Re Tr(rho A(q, p)) point by point; O(N^5).
WignerGrid wigner_transform_direct(const DensityMatrix& rho,
                                   const PhaseSpaceSpec& spec);

/// Smearing along the channel direction:
///   W'(q,p) = (1-alpha) W + alpha/(2M) sum_n [W(q + 2n dq, p + 2n dp) + W(q - 2n dq, p - 2n dp)]
/// with periodic indices. Throws UnsupportedOperation for non-collinear
/// channels.
WignerGrid wigner_diffuse(const WignerGrid& w, const DiffusionChannel& channel);

/// Sum over p of W on the odd columns q = 2n + 1; equals diag(rho).
RealVector position_marginal(const WignerGrid& w);
/// Sum over q of W on the odd rows p = 2m + 1; equals diag(G rho G^dagger).
RealVector momentum_marginal(const WignerGrid& w);

} // namespace qmaps

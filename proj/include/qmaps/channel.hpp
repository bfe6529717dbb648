#pragma once

#include "qmaps/fourier.hpp"
#include "qmaps/kinematics.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace qmaps {

struct Displacement {
  long dq = 0;
  long dp = 0;
  friend bool operator==(const Displacement&, const Displacement&) = default;
};

/// Operator-sum representation; weights are folded into the operators.
struct KrausSet {
  std::vector<ComplexMatrix> operators;

  /// max |sum_k E_k^dagger E_k - I|
  double completeness_error() const;
};

/// Diffusive channel
///   rho -> (1 - alpha) rho + alpha/(2M) sum_n (D_n rho D_n^dagger + D_n^dagger rho D_n).
///
/// The collinear form uses D_n = D(n dq, n dp), n = 1..M. It is applied by
/// multiplying rho entrywise with a damping kernel in the eigenbasis of the
/// elementary displacement: the position basis for (0, dp), the momentum
/// basis for (dq, 0), and a Schur basis built at construction for general
/// directions. Mixtures of arbitrary displacements are only available
/// through the Kraus sum.
class DiffusionChannel {
public:
  DiffusionChannel(PhaseSpaceSpec spec, double alpha, int terms, long dq,
                   long dp);

  /// Mixture over an explicit displacement list (M = list size).
  static DiffusionChannel mixture(PhaseSpaceSpec spec, double alpha,
                                  std::vector<Displacement> displacements);

  const PhaseSpaceSpec& spec() const noexcept { return spec_; }
  double alpha() const noexcept { return alpha_; }
  int terms() const noexcept { return static_cast<int>(displacements_.size()); }
  bool collinear() const noexcept { return collinear_; }
  /// Elementary direction of a collinear channel.
  Displacement direction() const noexcept { return direction_; }
  const std::vector<Displacement>& displacements() const noexcept {
    return displacements_;
  }
  bool has_fast_path() const noexcept { return fast_ != nullptr; }

  /// Factor multiplying an off-diagonal element whose eigenbasis labels of
  /// the elementary displacement differ by k:
  ///   1 - alpha [1 - cos(pi k (M+1)/N) sin(pi k M/N) / (M sin(pi k/N))],
  /// and exactly 1 for k = 0 mod N.
  double damping_factor(long k) const;

  /// Same factor for an arbitrary eigenphase difference theta:
  ///   1 - alpha + alpha/M sum_{n=1..M} cos(n theta).
  double damping_for_phase(double theta) const;

  struct FastPath;
  const FastPath& fast_path() const { return *fast_; }

private:
  DiffusionChannel(PhaseSpaceSpec spec, double alpha,
                   std::vector<Displacement> displacements, bool collinear,
                   Displacement direction);

  PhaseSpaceSpec spec_;
  double alpha_;
  std::vector<Displacement> displacements_;
  bool collinear_;
  Displacement direction_;
  std::shared_ptr<const FastPath> fast_;
};

struct DiffusionChannel::FastPath {
  enum class Basis { position, momentum, schur };
  Basis basis;
  RealMatrix kernel;              // entrywise multiplier in that basis
  std::optional<TwistedDft> dft;  // momentum basis
  ComplexMatrix schur_vectors;    // schur basis (unitary)
};

/// How apply_diffusion evaluates the channel.
enum class DiffusionMode { automatic, kraus, fast };

/// 2M + 1 operators: sqrt(1-alpha) I, sqrt(alpha/2M) D_n, sqrt(alpha/2M) D_n^dagger.
KrausSet kraus_set(const DiffusionChannel& channel);

/// sum_k E_k rho E_k^dagger with dense products.
DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus);

DensityMatrix apply_diffusion(const DensityMatrix& rho,
                              const DiffusionChannel& channel,
                              DiffusionMode mode = DiffusionMode::automatic);

/// Suppression of the <i|rho|i + N/2> coherence used by the analytic toy
/// model. With no term count (large-M limit) this is 1 - alpha; with a finite
/// M it is the exact damping factor at k = N/2, which depends only on M.
double decoherence_ratio_toy(double alpha,
                             std::optional<int> terms = std::nullopt);

} // namespace qmaps

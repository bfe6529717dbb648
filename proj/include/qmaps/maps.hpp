#pragma once

#include "qmaps/fourier.hpp"
#include "qmaps/kinematics.hpp"

#include <memory>
#include <optional>

namespace qmaps {

/// How unitary_step applies the propagator.
enum class StepMode {
  automatic, ///< factored for N >= kFactoredThreshold when available
  dense,
  factored,
};

/// Dimension from which the factored (FFT) application is the default.
inline constexpr int kFactoredThreshold = 32;

/// One step of a quantum map: its dense matrix plus, for the baker and kicked
/// families, an FFT-factored form. Immutable after construction; copies share
/// the factored plans.
class UnitaryPropagator {
public:
  enum class Kind { baker, kicked, dense };

  /// Wraps an arbitrary dense unitary (no factored form).
  UnitaryPropagator(PhaseSpaceSpec spec, OperatorMatrix dense);

  const PhaseSpaceSpec& spec() const noexcept { return spec_; }
  const OperatorMatrix& dense() const noexcept { return dense_; }
  Kind kind() const noexcept { return kind_; }
  bool has_factored_form() const noexcept { return factored_ != nullptr; }
  /// Kick strength for kicked maps.
  std::optional<double> gamma() const noexcept { return gamma_; }

  /// In place: every column of `m` (N x N) is replaced by U times it, using
  /// the factored form. Throws UnsupportedOperation if there is none.
  void apply_factored_columns(ComplexMatrix& m) const;

  StateVector apply(const StateVector& psi) const;

  friend UnitaryPropagator baker_propagator(const PhaseSpaceSpec& spec);
  friend UnitaryPropagator harper_propagator(const PhaseSpaceSpec& spec,
                                             double gamma);

private:
  struct Factored;

  UnitaryPropagator(PhaseSpaceSpec spec, OperatorMatrix dense, Kind kind,
                    std::shared_ptr<const Factored> factored,
                    std::optional<double> gamma);

  PhaseSpaceSpec spec_;
  OperatorMatrix dense_;
  Kind kind_;
  std::shared_ptr<const Factored> factored_;
  std::optional<double> gamma_;
};

/// B = G_N^{-1} blockdiag(G_{N/2}, G_{N/2}); requires even N and
/// antiperiodic Floquet angles.
UnitaryPropagator baker_propagator(const PhaseSpaceSpec& spec);

/// U = U_q G^dagger U_p G with U_q = exp(-i gamma N cos(2 pi q)) diagonal in
/// position and U_p = exp(-i gamma N cos(2 pi p)) diagonal in momentum.
UnitaryPropagator harper_propagator(const PhaseSpaceSpec& spec, double gamma);

/// rho -> U rho U^dagger. The result is re-Hermitized.
DensityMatrix unitary_step(const DensityMatrix& rho, const UnitaryPropagator& u,
                           StepMode mode = StepMode::automatic);

} // namespace qmaps

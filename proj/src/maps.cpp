#include "qmaps/maps.hpp"

#include "qmaps/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

// One Newton-Schulz step towards the nearest unitary. Products of DFT
// matrices carry a unitarity error of a few ulps whose bias otherwise makes
// the trace drift linearly over long runs.
ComplexMatrix polish_unitary(const ComplexMatrix& u) {
  const auto n = u.rows();
  return 0.5 * u * (3.0 * ComplexMatrix::Identity(n, n) - u.adjoint() * u);
}

} // namespace

struct UnitaryPropagator::Factored {
  // kicked: G on full columns; baker: G_N (adjoint pass) plus G_{N/2} on the
  // top and bottom halves of every column.
  TwistedDft full;
  std::optional<TwistedDft> half;
  ComplexVector kick_q; // diagonal in position
  ComplexVector kick_p; // diagonal in momentum
};

UnitaryPropagator::UnitaryPropagator(PhaseSpaceSpec spec, OperatorMatrix dense)
    : UnitaryPropagator(spec, std::move(dense), Kind::dense, nullptr,
                        std::nullopt) {}

UnitaryPropagator::UnitaryPropagator(PhaseSpaceSpec spec, OperatorMatrix dense,
                                     Kind kind,
                                     std::shared_ptr<const Factored> factored,
                                     std::optional<double> gamma)
    : spec_(spec), dense_(std::move(dense)), kind_(kind),
      factored_(std::move(factored)), gamma_(gamma) {
  if (dense_.elements.rows() != spec_.dimension() ||
      dense_.elements.cols() != spec_.dimension())
    throw DomainError("UnitaryPropagator: matrix dimension does not match spec");
}

void UnitaryPropagator::apply_factored_columns(ComplexMatrix& m) const {
  if (!factored_)
    throw UnsupportedOperation("propagator has no factored form");
  const int n = spec_.dimension();
  if (m.rows() != n || m.cols() != n)
    throw DomainError("apply_factored_columns: expected an N x N matrix");
  const Factored& f = *factored_;
  if (kind_ == Kind::kicked) {
    f.full.forward(m.data());
    m = f.kick_p.asDiagonal() * m;
    f.full.adjoint(m.data());
    m = f.kick_q.asDiagonal() * m;
  } else {
    f.half->forward(m.data());
    f.half->forward(m.data() + n / 2);
    f.full.adjoint(m.data());
  }
}

StateVector UnitaryPropagator::apply(const StateVector& psi) const {
  if (psi.amplitudes.size() != spec_.dimension())
    throw DomainError("UnitaryPropagator::apply: dimension mismatch");
  return StateVector{dense_.elements * psi.amplitudes, std::nullopt};
}

UnitaryPropagator baker_propagator(const PhaseSpaceSpec& spec) {
  const int n = spec.dimension();
  if (n % 2 != 0)
    throw DomainError("baker_propagator: N must be even, got " +
                      std::to_string(n));
  if (!spec.antiperiodic())
    throw DomainError(
        "baker_propagator: quantization defined only for antiperiodic "
        "Floquet angles chi_q = chi_p = 1/2 (the original periodic "
        "quantization was later modified to antiperiodic conditions)");

  const int half = n / 2;
  const ComplexMatrix g = fourier_kernel(spec).elements;
  const ComplexMatrix gh = fourier_kernel(PhaseSpaceSpec(half)).elements;
  ComplexMatrix block = ComplexMatrix::Zero(n, n);
  block.topLeftCorner(half, half) = gh;
  block.bottomRightCorner(half, half) = gh;
  OperatorMatrix dense{polish_unitary(g.adjoint() * block), true};

  auto f = std::make_shared<UnitaryPropagator::Factored>(
      UnitaryPropagator::Factored{TwistedDft(n, 0.5, 0.5, n, n),
                                  TwistedDft(half, 0.5, 0.5, n, n),
                                  {},
                                  {}});
  return UnitaryPropagator(spec, std::move(dense),
                           UnitaryPropagator::Kind::baker, std::move(f),
                           std::nullopt);
}

UnitaryPropagator harper_propagator(const PhaseSpaceSpec& spec, double gamma) {
  const int n = spec.dimension();
  const double two_pi = 2.0 * std::numbers::pi;
  ComplexVector kick_q(n), kick_p(n);
  for (int k = 0; k < n; ++k) {
    kick_q(k) = std::polar(1.0, -gamma * n * std::cos(two_pi * spec.position_of(k)));
    kick_p(k) = std::polar(1.0, -gamma * n * std::cos(two_pi * spec.momentum_of(k)));
  }
  const ComplexMatrix g = fourier_kernel(spec).elements;
  OperatorMatrix dense{
      polish_unitary(kick_q.asDiagonal() * g.adjoint() * kick_p.asDiagonal() * g), true};

  auto f = std::make_shared<UnitaryPropagator::Factored>(
      UnitaryPropagator::Factored{
          TwistedDft(n, spec.chi_q(), spec.chi_p(), n, n), std::nullopt,
          std::move(kick_q), std::move(kick_p)});
  return UnitaryPropagator(spec, std::move(dense),
                           UnitaryPropagator::Kind::kicked, std::move(f), gamma);
}

DensityMatrix unitary_step(const DensityMatrix& rho, const UnitaryPropagator& u,
                           StepMode mode) {
  const int n = u.spec().dimension();
  if (rho.dimension() != n)
    throw DomainError("unitary_step: density matrix is " +
                      std::to_string(rho.dimension()) + "-dimensional, "
                      "propagator is " + std::to_string(n) + "-dimensional");

  bool use_factored = false;
  switch (mode) {
  case StepMode::automatic:
    use_factored = u.has_factored_form() && n >= kFactoredThreshold;
    break;
  case StepMode::factored:
    if (!u.has_factored_form())
      throw UnsupportedOperation("unitary_step: propagator has no factored form");
    use_factored = true;
    break;
  case StepMode::dense:
    break;
  }

  DensityMatrix out(ComplexMatrix(n, n));
  if (use_factored) {
    // U rho U^dagger = (U (U rho)^dagger)^dagger
    ComplexMatrix a = rho.matrix();
    u.apply_factored_columns(a);
    ComplexMatrix b = a.adjoint();
    u.apply_factored_columns(b);
    out.matrix() = b.adjoint();
  } else {
    const ComplexMatrix& m = u.dense().elements;
    out.matrix().noalias() = m * rho.matrix() * m.adjoint();
  }
  out.hermitize();
  return out;
}

} // namespace qmaps

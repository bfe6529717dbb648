#include "qmaps/kinematics.hpp"

#include "qmaps/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// exp(-2 pi i x / N) with x reduced mod N first so large products keep
// full phase accuracy.
Complex kernel_phase(double x, int n) {
  const double r = std::fmod(x, static_cast<double>(n));
  return std::polar(1.0, -kTwoPi * r / n);
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

} // namespace

PhaseSpaceSpec::PhaseSpaceSpec(int dimension, double chi_q, double chi_p)
    : n_(dimension), chi_q_(chi_q), chi_p_(chi_p) {
  if (dimension < 1)
    throw DomainError("PhaseSpaceSpec: dimension must be >= 1, got " +
                      std::to_string(dimension));
  if (!(chi_q >= 0.0 && chi_q < 1.0) || !(chi_p >= 0.0 && chi_p < 1.0))
    throw DomainError("PhaseSpaceSpec: Floquet angles must lie in [0, 1)");
}

DensityMatrix::DensityMatrix(ComplexMatrix elements) : rho_(std::move(elements)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw DomainError("DensityMatrix: matrix must be square and non-empty");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.amplitudes * psi.amplitudes.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int dimension) {
  return DensityMatrix(ComplexMatrix::Identity(dimension, dimension) /
                       static_cast<double>(dimension));
}

double DensityMatrix::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const ComplexMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

void DensityMatrix::check(double tol, bool check_positivity,
                          double eig_tol) const {
  if (const double h = hermiticity_error(); h > tol)
    throw InvariantError("density matrix not Hermitian: deviation " +
                         std::to_string(h));
  if (const double t = std::abs(trace() - 1.0); t > tol)
    throw InvariantError("density matrix trace deviates from 1 by " +
                         std::to_string(t));
  if (check_positivity) {
    if (const double m = min_eigenvalue(); m < -eig_tol)
      throw InvariantError("density matrix has negative eigenvalue " +
                           std::to_string(m));
  }
}

void DensityMatrix::hermitize() {
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
}

double unitarity_error(const ComplexMatrix& u) {
  const auto n = u.rows();
  return (u.adjoint() * u - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

OperatorMatrix fourier_kernel(const PhaseSpaceSpec& spec) {
  const int n = spec.dimension();
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  ComplexMatrix g(n, n);
  for (int col = 0; col < n; ++col)
    for (int row = 0; row < n; ++row)
      g(row, col) = scale * kernel_phase((row + spec.chi_q()) *
                                             (col + spec.chi_p()),
                                         n);
  return {std::move(g), true};
}

ComplexMatrix position_shift_power(const PhaseSpaceSpec& spec, long power) {
  const long n = spec.dimension();
  ComplexMatrix u = ComplexMatrix::Zero(n, n);
  for (long col = 0; col < n; ++col) {
    const long target = col + power;
    const long wraps = floor_div(target, n);
    const long row = target - wraps * n;
    // Each wrap across the boundary contributes exp(-2 pi i chi_q).
    u(row, col) = std::polar(1.0, -kTwoPi * spec.chi_q() *
                                      static_cast<double>(wraps));
  }
  return u;
}

ComplexVector momentum_shift_power_diagonal(const PhaseSpaceSpec& spec,
                                            long power) {
  const int n = spec.dimension();
  ComplexVector d(n);
  for (int k = 0; k < n; ++k) {
    // phase 2 pi power (k + chi_p) / N, reduced mod 2 pi in the numerator
    const double x = std::fmod(static_cast<double>(power) * (k + spec.chi_p()),
                               static_cast<double>(n));
    d(k) = std::polar(1.0, kTwoPi * x / n);
  }
  return d;
}

OperatorMatrix shift_operator(const PhaseSpaceSpec& spec, Basis axis) {
  if (axis == Basis::position)
    return {position_shift_power(spec, 1), true};
  return {ComplexMatrix(momentum_shift_power_diagonal(spec, 1).asDiagonal()),
          true};
}

OperatorMatrix displacement(const PhaseSpaceSpec& spec, long dq, long dp) {
  const int n = spec.dimension();
  const ComplexVector v = momentum_shift_power_diagonal(spec, dp);
  ComplexMatrix d = position_shift_power(spec, dq) * v.asDiagonal();
  const double x = std::fmod(static_cast<double>(dp) * static_cast<double>(dq),
                             2.0 * n);
  d *= std::polar(1.0, std::numbers::pi * x / n);
  return {std::move(d), true};
}

StateVector basis_state(const PhaseSpaceSpec& spec, Basis kind, int index) {
  const int n = spec.dimension();
  if (index < 0 || index >= n)
    throw DomainError("basis_state: index " + std::to_string(index) +
                      " outside [0, " + std::to_string(n) + ")");
  StateVector psi;
  if (kind == Basis::position) {
    psi.amplitudes = ComplexVector::Zero(n);
    psi.amplitudes(index) = 1.0;
    psi.label = StateVector::Label{kind, index, spec.position_of(index)};
  } else {
    // <q_n|p_m> = conj(G_{mn})
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    psi.amplitudes.resize(n);
    for (int q = 0; q < n; ++q)
      psi.amplitudes(q) =
          std::conj(scale * kernel_phase((index + spec.chi_q()) *
                                             (q + spec.chi_p()),
                                         n));
    psi.label = StateVector::Label{kind, index, spec.momentum_of(index)};
  }
  return psi;
}

StateVector coherent_state(const PhaseSpaceSpec& spec, double q0, double p0) {
  const int n = spec.dimension();
  const double nd = n;
  StateVector psi;
  psi.amplitudes = ComplexVector::Zero(n);
  for (int k = 0; k < n; ++k) {
    const double x = spec.position_of(k);
    Complex sum = 0.0;
    for (int image = -2; image <= 2; ++image) {
      const double d = x - q0 + image;
      sum += std::exp(Complex(-std::numbers::pi * nd * d * d,
                              kTwoPi * nd * p0 * d));
    }
    psi.amplitudes(k) = sum;
  }
  psi.amplitudes /= psi.amplitudes.norm();
  return psi;
}

double linear_entropy(const DensityMatrix& rho) {
  const double purity = rho.purity();
  if (!(purity > 0.0))
    throw InvariantError("linear_entropy: Tr(rho^2) is not positive");
  return -std::log(purity);
}

} // namespace qmaps

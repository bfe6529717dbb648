#pragma once

// Finite-dimensional Hilbert space on the unit torus.
//
// Position eigenstates |q_n> sit at q = (n + chi_p)/N and momentum
// eigenstates |p_m> at p = (m + chi_q)/N. The transition kernel
//   <p_m|q_n> = N^{-1/2} exp(-2 pi i (m + chi_q)(n + chi_p) / N)
// maps position amplitudes to momentum amplitudes.
//
// The shift operators are the Floquet-consistent ones: U is diagonal in the
// momentum basis and V in the position basis, so that U|q_n> = |q_{n+1}> and
// V|p_m> = |p_{m+1}> except at the wrap, where the boundary phase
// exp(-2 pi i chi_q) (resp. exp(2 pi i chi_p)) is picked up. With these,
// V U = exp(2 pi i / N) U V holds exactly.

#include <Eigen/Dense>

#include <complex>
#include <optional>

namespace qmaps {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

enum class Basis { position, momentum };

/// Dimension and Floquet angles of the quantized torus. The effective Planck
/// constant is always derived as 1/N (2 pi hbar N = 1).
class PhaseSpaceSpec {
public:
  explicit PhaseSpaceSpec(int dimension, double chi_q = 0.5,
                          double chi_p = 0.5);

  int dimension() const noexcept { return n_; }
  double chi_q() const noexcept { return chi_q_; }
  double chi_p() const noexcept { return chi_p_; }
  double h_eff() const noexcept { return 1.0 / n_; }
  bool antiperiodic() const noexcept { return chi_q_ == 0.5 && chi_p_ == 0.5; }

  /// Eigenvalue location of basis index `index` ((index + chi)/N).
  double position_of(int index) const noexcept { return (index + chi_p_) / n_; }
  double momentum_of(int index) const noexcept { return (index + chi_q_) / n_; }

  friend bool operator==(const PhaseSpaceSpec&, const PhaseSpaceSpec&) = default;

private:
  int n_;
  double chi_q_;
  double chi_p_;
};

/// Pure state in the position representation.
struct StateVector {
  ComplexVector amplitudes;
  /// Which eigenbasis the state was built from, if any, with its index and
  /// eigenvalue location.
  struct Label {
    Basis kind;
    int index;
    double location;
  };
  std::optional<Label> label;

  double squared_norm() const { return amplitudes.squaredNorm(); }
};

/// Dense operator in the position basis.
struct OperatorMatrix {
  ComplexMatrix elements;
  bool unitary_hint = false;

  int dimension() const { return static_cast<int>(elements.rows()); }
};

/// N x N density matrix in the position basis.
class DensityMatrix {
public:
  explicit DensityMatrix(ComplexMatrix elements);

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(int dimension);

  int dimension() const noexcept { return static_cast<int>(rho_.rows()); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }
  ComplexMatrix& matrix() noexcept { return rho_; }

  Complex trace() const { return rho_.trace(); }
  /// Tr(rho^2) as the Frobenius norm squared (valid for Hermitian rho).
  double purity() const { return rho_.squaredNorm(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;

  /// Throws InvariantError if Hermiticity, unit trace or (optionally)
  /// positivity fail at the given tolerances.
  void check(double tol = 1e-12, bool check_positivity = false,
             double eig_tol = 1e-10) const;

  /// Replaces rho by (rho + rho^dagger)/2.
  void hermitize();

private:
  ComplexMatrix rho_;
};

// Max-norm distance of U^dagger U from the identity.
double unitarity_error(const ComplexMatrix& u);

OperatorMatrix fourier_kernel(const PhaseSpaceSpec& spec);
OperatorMatrix shift_operator(const PhaseSpaceSpec& spec, Basis axis);

/// U^{power} for any integer power (no reduction mod N).
ComplexMatrix position_shift_power(const PhaseSpaceSpec& spec, long power);
/// V^{power} as a diagonal in the position basis.
ComplexVector momentum_shift_power_diagonal(const PhaseSpaceSpec& spec,
                                            long power);

/// D(dq, dp) = U^dq V^dp exp(i pi dp dq / N). Note the argument order: the
/// position displacement comes first.
OperatorMatrix displacement(const PhaseSpaceSpec& spec, long dq, long dp);

StateVector basis_state(const PhaseSpaceSpec& spec, Basis kind, int index);

/// Periodized Gaussian (five images) centred at (q0, p0) with equal widths
/// sigma_q^2 = sigma_p^2 = 1/(4 pi N), normalized numerically.
StateVector coherent_state(const PhaseSpaceSpec& spec, double q0, double p0);

/// S = -ln Tr(rho^2).
double linear_entropy(const DensityMatrix& rho);

} // namespace qmaps

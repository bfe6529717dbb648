#include "qmaps/channel.hpp"

#include "qmaps/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("DiffusionChannel: alpha must lie in [0, 1], got " +
                      std::to_string(alpha));
}

} // namespace

double KrausSet::completeness_error() const {
  if (operators.empty())
    return std::numeric_limits<double>::infinity();
  const auto n = operators.front().rows();
  ComplexMatrix sum = ComplexMatrix::Zero(n, n);
  for (const auto& e : operators)
    sum.noalias() += e.adjoint() * e;
  return (sum - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

DiffusionChannel::DiffusionChannel(PhaseSpaceSpec spec, double alpha, int terms,
                                   long dq, long dp)
    : spec_(spec), alpha_(alpha), collinear_(true), direction_{dq, dp} {
  check_alpha(alpha);
  const int n = spec.dimension();
  if (terms < 1 || terms > n)
    throw DomainError("DiffusionChannel: term count M must lie in [1, N], got " +
                      std::to_string(terms));
  if (dq == 0 && dp == 0)
    throw DomainError("DiffusionChannel: displacement direction must be nonzero");

  for (long k = 1; k <= terms; ++k)
    displacements_.push_back({k * dq, k * dp});

  auto fast = std::make_shared<FastPath>();
  RealMatrix& kernel = fast->kernel;
  kernel.resize(n, n);
  if (dq == 0 || dp == 0) {
    // V^dp is diagonal in position, U^dq in momentum; eigenphases are
    // 2 pi (index) step / N, so label differences scale by the step.
    const long step = dq == 0 ? dp : dq;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        kernel(i, j) = damping_factor(step * (i - j));
    if (dq == 0) {
      fast->basis = FastPath::Basis::position;
    } else {
      fast->basis = FastPath::Basis::momentum;
      fast->dft.emplace(n, spec.chi_q(), spec.chi_p(), n, n);
    }
  } else {
    // D is normal, so its complex Schur form is diagonal and the Schur
    // vectors form an orthonormal eigenbasis even for degenerate spectra.
    const ComplexMatrix d = displacement(spec, dq, dp).elements;
    Eigen::ComplexSchur<ComplexMatrix> schur(d);
    fast->basis = FastPath::Basis::schur;
    fast->schur_vectors = schur.matrixU();
    const auto& t = schur.matrixT();
    RealVector theta(n);
    for (int i = 0; i < n; ++i)
      theta(i) = std::arg(t(i, i));
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        kernel(i, j) = damping_for_phase(theta(i) - theta(j));
  }
  fast_ = std::move(fast);
}

DiffusionChannel::DiffusionChannel(PhaseSpaceSpec spec, double alpha,
                                   std::vector<Displacement> displacements,
                                   bool collinear, Displacement direction)
    : spec_(spec), alpha_(alpha), displacements_(std::move(displacements)),
      collinear_(collinear), direction_(direction) {}

DiffusionChannel DiffusionChannel::mixture(PhaseSpaceSpec spec, double alpha,
                                           std::vector<Displacement> displacements) {
  check_alpha(alpha);
  if (displacements.empty())
    throw DomainError("DiffusionChannel::mixture: empty displacement list");
  if (static_cast<int>(displacements.size()) > spec.dimension())
    throw DomainError("DiffusionChannel::mixture: more than N terms");
  for (const auto& d : displacements)
    if (d.dq == 0 && d.dp == 0)
      throw DomainError("DiffusionChannel::mixture: zero displacement");

  // Collinear in the sense required by the Wigner stencil: D_n = n * D_1.
  const Displacement first = displacements.front();
  bool collinear = true;
  for (std::size_t k = 0; k < displacements.size(); ++k) {
    const long n = static_cast<long>(k) + 1;
    if (displacements[k].dq != n * first.dq || displacements[k].dp != n * first.dp)
      collinear = false;
  }
  if (collinear)
    return DiffusionChannel(spec, alpha, static_cast<int>(displacements.size()),
                            first.dq, first.dp);
  return DiffusionChannel(spec, alpha, std::move(displacements), false, first);
}

double DiffusionChannel::damping_factor(long k) const {
  const long n = spec_.dimension();
  const long r = mod(k, n);
  if (r == 0)
    return 1.0;
  const double m = terms();
  const double x = std::numbers::pi * static_cast<double>(r) / n;
  const double ratio =
      std::cos(x * (m + 1.0)) * std::sin(x * m) / (m * std::sin(x));
  return 1.0 - alpha_ * (1.0 - ratio);
}

double DiffusionChannel::damping_for_phase(double theta) const {
  double sum = 0.0;
  for (int k = 1; k <= terms(); ++k)
    sum += std::cos(k * theta);
  return 1.0 - alpha_ + alpha_ / terms() * sum;
}

KrausSet kraus_set(const DiffusionChannel& channel) {
  const auto& spec = channel.spec();
  const int n = spec.dimension();
  const double m = channel.terms();
  KrausSet set;
  set.operators.reserve(2 * channel.terms() + 1);
  set.operators.push_back(std::sqrt(1.0 - channel.alpha()) *
                          ComplexMatrix::Identity(n, n));
  const double w = std::sqrt(channel.alpha() / (2.0 * m));
  for (const auto& d : channel.displacements()) {
    const ComplexMatrix dn = displacement(spec, d.dq, d.dp).elements;
    set.operators.push_back(w * dn);
    set.operators.push_back(w * dn.adjoint());
  }
  return set;
}

DensityMatrix apply_kraus(const DensityMatrix& rho, const KrausSet& kraus) {
  const int n = rho.dimension();
  ComplexMatrix out = ComplexMatrix::Zero(n, n);
  for (const auto& e : kraus.operators) {
    if (e.rows() != n)
      throw DomainError("apply_kraus: dimension mismatch");
    out.noalias() += e * rho.matrix() * e.adjoint();
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix apply_diffusion(const DensityMatrix& rho,
                              const DiffusionChannel& channel,
                              DiffusionMode mode) {
  const int n = channel.spec().dimension();
  if (rho.dimension() != n)
    throw DomainError("apply_diffusion: density matrix is " +
                      std::to_string(rho.dimension()) +
                      "-dimensional, channel is " + std::to_string(n) +
                      "-dimensional");
  if (mode == DiffusionMode::fast && !channel.has_fast_path())
    throw UnsupportedOperation(
        "apply_diffusion: no fast path for a non-collinear mixture");
  if (mode == DiffusionMode::kraus || !channel.has_fast_path())
    return apply_kraus(rho, kraus_set(channel));

  const auto& fast = channel.fast_path();
  DensityMatrix out(ComplexMatrix(n, n));
  switch (fast.basis) {
  case DiffusionChannel::FastPath::Basis::position:
    out.matrix() = rho.matrix().cwiseProduct(fast.kernel.cast<Complex>());
    break;
  case DiffusionChannel::FastPath::Basis::momentum: {
    // Only the change (K - 1) o rho is transformed back. Its diagonal is
    // zero, so rounding in the round trip cannot rescale the trace.
    ComplexMatrix m = to_momentum_representation(*fast.dft, rho.matrix());
    m = m.cwiseProduct((fast.kernel.array() - 1.0).matrix().cast<Complex>());
    out.matrix() = rho.matrix() + to_position_representation(*fast.dft, m);
    out.hermitize();
    break;
  }
  case DiffusionChannel::FastPath::Basis::schur: {
    const ComplexMatrix& q = fast.schur_vectors;
    ComplexMatrix m = q.adjoint() * rho.matrix() * q;
    m = m.cwiseProduct((fast.kernel.array() - 1.0).matrix().cast<Complex>());
    out.matrix() = rho.matrix() + q * m * q.adjoint();
    out.hermitize();
    break;
  }
  }
  return out;
}

double decoherence_ratio_toy(double alpha, std::optional<int> terms) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw DomainError("decoherence_ratio_toy: alpha must lie in [0, 1]");
  if (!terms)
    return 1.0 - alpha;
  const int m = *terms;
  if (m < 1)
    throw DomainError("decoherence_ratio_toy: M must be >= 1");
  // At k = N/2 the closed-form ratio is cos(pi (M+1)/2) sin(pi M/2) / M,
  // which is 0 for even M and -1/M for odd M.
  const double ratio = (m % 2 == 0) ? 0.0 : -1.0 / m;
  return 1.0 - alpha * (1.0 - ratio);
}

} // namespace qmaps

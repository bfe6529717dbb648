#include "qmaps/wigner.hpp"

#include "qmaps/errors.hpp"
#include "qmaps/fourier.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qmaps {

namespace {

long mod(long a, long n) {
  const long r = a % n;
  return r < 0 ? r + n : r;
}

void require_antiperiodic(const PhaseSpaceSpec& spec, const char* who) {
  if (!spec.antiperiodic())
    throw DomainError(std::string(who) +
                      ": the Wigner lattice is defined for chi_q = chi_p = 1/2 only");
}

void require_matching(const DensityMatrix& rho, const PhaseSpaceSpec& spec,
                      const char* who) {
  if (rho.dimension() != spec.dimension())
    throw DomainError(std::string(who) + ": density matrix dimension " +
                      std::to_string(rho.dimension()) + " does not match N = " +
                      std::to_string(spec.dimension()));
}

} // namespace

WignerGrid::WignerGrid(PhaseSpaceSpec spec, RealMatrix values,
                       double imag_residue)
    : spec_(spec), values_(std::move(values)), imag_residue_(imag_residue) {
  const int side = 2 * spec_.dimension();
  if (values_.rows() != side || values_.cols() != side)
    throw DomainError("WignerGrid: expected a 2N x 2N array");
}

OperatorMatrix reflection_operator(const PhaseSpaceSpec& spec) {
  const int n = spec.dimension();
  ComplexMatrix r = ComplexMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    r(n - 1 - i, i) = 1.0;
  return {std::move(r), true};
}

PointOperator point_operator(const PhaseSpaceSpec& spec, int q, int p) {
  const int n = spec.dimension();
  if (q < 0 || q >= 2 * n || p < 0 || p >= 2 * n)
    throw DomainError("point_operator: (" + std::to_string(q) + ", " +
                      std::to_string(p) + ") outside the 2N lattice");
  // R V^{-p} is a reversed diagonal: (R V^{-p})_{N-1-j, j} = v_j.
  const ComplexVector v = momentum_shift_power_diagonal(spec, -p);
  ComplexMatrix rv = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    rv(n - 1 - j, j) = v(j);
  const long qp = mod(static_cast<long>(q) * p, 2L * n);
  const Complex phase =
      std::polar(1.0 / (2.0 * n), std::numbers::pi * static_cast<double>(qp) / n);
  ComplexMatrix a = phase * (position_shift_power(spec, q) * rv);
  return {q, p, {std::move(a), false}};
}

WignerGrid wigner_transform_direct(const DensityMatrix& rho,
                                   const PhaseSpaceSpec& spec) {
  require_antiperiodic(spec, "wigner_transform_direct");
  require_matching(rho, spec, "wigner_transform_direct");
  const int side = 2 * spec.dimension();
  RealMatrix w(side, side);
  double residue = 0.0;
  for (int q = 0; q < side; ++q) {
    for (int p = 0; p < side; ++p) {
      const ComplexMatrix& a = point_operator(spec, q, p).matrix.elements;
      const Complex tr = rho.matrix().cwiseProduct(a.transpose()).sum();
      w(q, p) = -tr.real();
      residue = std::max(residue, std::abs(tr.imag()));
    }
  }
  return WignerGrid(spec, std::move(w), residue);
}

WignerGrid wigner_transform(const DensityMatrix& rho, const PhaseSpaceSpec& spec) {
  require_antiperiodic(spec, "wigner_transform");
  require_matching(rho, spec, "wigner_transform");
  const int n = spec.dimension();
  const double two_pi = 2.0 * std::numbers::pi;

  // Mixed representation X = G rho: rows are momentum labels k, columns
  // position labels n.
  ComplexMatrix y = rho.matrix();
  TwistedDft dft(n, spec.chi_q(), spec.chi_p(), n, n);
  apply_fourier_columns(dft, y);
  for (int c = 0; c < n; ++c)
    for (int k = 0; k < n; ++k) {
      const double x = std::fmod((c - spec.chi_p()) * (k - spec.chi_q()), n);
      y(k, c) *= std::polar(1.0, -two_pi * x / n);
    }
  inverse_dft_2d(y);

  // The closed formula carries labels shifted by one cell and a factor 4
  // relative to -Re Tr(rho A).
  const int side = 2 * n;
  const double scale = 0.25 * 2.0 / std::pow(static_cast<double>(n), 1.5);
  const double offset = 2.0 * spec.chi_p() * spec.chi_q();
  RealMatrix w(side, side);
  double residue = 0.0;
  for (int p = 0; p < side; ++p) {
    const long pp = p - 1;
    for (int q = 0; q < side; ++q) {
      const long qq = q - 1;
      const long prod = mod(qq * pp, 2L * n);
      const double angle = -two_pi * (0.5 * static_cast<double>(prod) - offset) / n;
      const Complex value =
          std::polar(scale, angle) * y(mod(qq, n), mod(pp, n));
      w(q, p) = value.real();
      residue = std::max(residue, std::abs(value.imag()));
    }
  }
  return WignerGrid(spec, std::move(w), residue);
}

WignerGrid wigner_diffuse(const WignerGrid& w, const DiffusionChannel& channel) {
  if (!channel.collinear())
    throw UnsupportedOperation(
        "wigner_diffuse: non-collinear mixtures have no Wigner stencil");
  if (!(channel.spec() == w.spec()))
    throw DomainError("wigner_diffuse: channel and grid specs differ");
  const long side = w.side();
  const double alpha = channel.alpha();
  const int m = channel.terms();
  const auto dir = channel.direction();
  const RealMatrix& in = w.values();
  RealMatrix out = (1.0 - alpha) * in;
  const double weight = alpha / (2.0 * m);
  for (int k = 1; k <= m; ++k) {
    const long sq = mod(2L * k * dir.dq, side);
    const long sp = mod(2L * k * dir.dp, side);
    for (long p = 0; p < side; ++p)
      for (long q = 0; q < side; ++q)
        out(q, p) += weight * (in((q + sq) % side, (p + sp) % side) +
                               in((q - sq + side) % side, (p - sp + side) % side));
  }
  return WignerGrid(w.spec(), std::move(out), w.imag_residue());
}

RealVector position_marginal(const WignerGrid& w) {
  const int n = w.spec().dimension();
  RealVector out(n);
  for (int i = 0; i < n; ++i)
    out(i) = w.values().row(2 * i + 1).sum();
  return out;
}

RealVector momentum_marginal(const WignerGrid& w) {
  const int n = w.spec().dimension();
  RealVector out(n);
  for (int i = 0; i < n; ++i)
    out(i) = w.values().col(2 * i + 1).sum();
  return out;
}

} // namespace qmaps

#include "qmaps/fourier.hpp"

#include "qmaps/errors.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

namespace qmaps {

namespace {

// The FFTW planner is not re-entrant; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

struct TwistedDft::Plans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward)
      fftw_destroy_plan(forward);
    if (backward)
      fftw_destroy_plan(backward);
  }
};

TwistedDft::TwistedDft(int size, double chi_q, double chi_p, int howmany,
                       int distance)
    : size_(size), howmany_(howmany), distance_(distance), pre_(size),
      post_(size), plans_(std::make_unique<Plans>()) {
  if (size < 1 || howmany < 1 || distance < size)
    throw DomainError("TwistedDft: invalid batch layout");

  const double two_pi = 2.0 * std::numbers::pi;
  const double scale = 1.0 / std::sqrt(static_cast<double>(size));
  for (int k = 0; k < size; ++k) {
    pre_[k] = std::polar(1.0, -two_pi * chi_q * k / size);
    const double x = std::fmod(chi_p * (k + chi_q), static_cast<double>(size));
    post_[k] = std::polar(scale, -two_pi * x / size);
  }

  std::vector<Complex> scratch(static_cast<std::size_t>(howmany - 1) * distance +
                               size);
  int n[] = {size};
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  std::lock_guard lock(planner_mutex());
  plans_->forward = fftw_plan_many_dft(1, n, howmany, as_fftw(scratch.data()),
                                       nullptr, 1, distance,
                                       as_fftw(scratch.data()), nullptr, 1,
                                       distance, FFTW_FORWARD, flags);
  plans_->backward = fftw_plan_many_dft(1, n, howmany, as_fftw(scratch.data()),
                                        nullptr, 1, distance,
                                        as_fftw(scratch.data()), nullptr, 1,
                                        distance, FFTW_BACKWARD, flags);
  if (!plans_->forward || !plans_->backward)
    throw std::runtime_error("TwistedDft: FFTW planning failed");
}

TwistedDft::~TwistedDft() = default;
TwistedDft::TwistedDft(TwistedDft&&) noexcept = default;
TwistedDft& TwistedDft::operator=(TwistedDft&&) noexcept = default;

void TwistedDft::forward(Complex* data) const {
  for (int b = 0; b < howmany_; ++b) {
    Complex* v = data + static_cast<std::ptrdiff_t>(b) * distance_;
    for (int k = 0; k < size_; ++k)
      v[k] *= pre_[k];
  }
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
  for (int b = 0; b < howmany_; ++b) {
    Complex* v = data + static_cast<std::ptrdiff_t>(b) * distance_;
    for (int k = 0; k < size_; ++k)
      v[k] *= post_[k];
  }
}

void TwistedDft::adjoint(Complex* data) const {
  for (int b = 0; b < howmany_; ++b) {
    Complex* v = data + static_cast<std::ptrdiff_t>(b) * distance_;
    for (int k = 0; k < size_; ++k)
      v[k] *= std::conj(post_[k]);
  }
  fftw_execute_dft(plans_->backward, as_fftw(data), as_fftw(data));
  for (int b = 0; b < howmany_; ++b) {
    Complex* v = data + static_cast<std::ptrdiff_t>(b) * distance_;
    for (int k = 0; k < size_; ++k)
      v[k] *= std::conj(pre_[k]);
  }
}

namespace {

void check_layout(const TwistedDft& dft, const ComplexMatrix& m) {
  if (m.rows() != dft.size() || m.cols() != dft.howmany() ||
      dft.distance() != dft.size())
    throw DomainError("TwistedDft: matrix shape does not match the plan");
}

} // namespace

void apply_fourier_columns(const TwistedDft& dft, ComplexMatrix& m) {
  check_layout(dft, m);
  dft.forward(m.data());
}

void apply_fourier_adjoint_columns(const TwistedDft& dft, ComplexMatrix& m) {
  check_layout(dft, m);
  dft.adjoint(m.data());
}

ComplexMatrix to_momentum_representation(const TwistedDft& dft,
                                         const ComplexMatrix& rho) {
  ComplexMatrix a = rho;
  apply_fourier_columns(dft, a); // G rho
  ComplexMatrix b = a.adjoint();
  apply_fourier_columns(dft, b); // G (G rho)^dagger
  return b.adjoint();
}

ComplexMatrix to_position_representation(const TwistedDft& dft,
                                         const ComplexMatrix& rho) {
  ComplexMatrix a = rho;
  apply_fourier_adjoint_columns(dft, a);
  ComplexMatrix b = a.adjoint();
  apply_fourier_adjoint_columns(dft, b);
  return b.adjoint();
}

void inverse_dft_2d(ComplexMatrix& m) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DomainError("inverse_dft_2d: expected a non-empty square matrix");
  const int n = static_cast<int>(m.rows());
  // The transform is symmetric in its two axes, so column-major storage can
  // be handed to FFTW's row-major planner unchanged.
  fftw_plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan = fftw_plan_dft_2d(n, n, as_fftw(m.data()), as_fftw(m.data()),
                            FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (!plan)
    throw std::runtime_error("inverse_dft_2d: FFTW planning failed");
  fftw_execute(plan);
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(plan);
}

} // namespace qmaps

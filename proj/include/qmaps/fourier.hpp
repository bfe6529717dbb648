#pragma once

#include "qmaps/kinematics.hpp"

#include <memory>
#include <vector>

namespace qmaps {

/// Batched application of the twisted Fourier kernel
///   (G x)_m = N^{-1/2} sum_n exp(-2 pi i (m + chi_q)(n + chi_p) / N) x_n
/// and of its adjoint, in place, to `howmany` vectors of length `size` laid
/// out `distance` elements apart (the columns, or a row-block of the columns,
/// of a column-major matrix). FFTW plans are built once in the constructor
/// with FFTW_ESTIMATE so results are bit-reproducible; `forward`/`adjoint`
/// are const and may be called concurrently on distinct data.
class TwistedDft {
public:
  TwistedDft(int size, double chi_q, double chi_p, int howmany, int distance);
  ~TwistedDft();
  TwistedDft(TwistedDft&&) noexcept;
  TwistedDft& operator=(TwistedDft&&) noexcept;
  TwistedDft(const TwistedDft&) = delete;
  TwistedDft& operator=(const TwistedDft&) = delete;

  int size() const noexcept { return size_; }
  int howmany() const noexcept { return howmany_; }
  int distance() const noexcept { return distance_; }

  void forward(Complex* data) const;
  void adjoint(Complex* data) const;

private:
  struct Plans;

  int size_;
  int howmany_;
  int distance_;
  std::vector<Complex> pre_;  // exp(-2 pi i chi_q n / N)
  std::vector<Complex> post_; // N^{-1/2} exp(-2 pi i chi_p (m + chi_q) / N)
  std::unique_ptr<Plans> plans_;
};

/// Column-wise kernel application to an N x N matrix: in-place G*M or G^dagger*M.
void apply_fourier_columns(const TwistedDft& dft, ComplexMatrix& m);
void apply_fourier_adjoint_columns(const TwistedDft& dft, ComplexMatrix& m);

/// rho -> G rho G^dagger and rho -> G^dagger rho G using two batched passes
/// per side.
ComplexMatrix to_momentum_representation(const TwistedDft& dft,
                                         const ComplexMatrix& rho);
ComplexMatrix to_position_representation(const TwistedDft& dft,
                                         const ComplexMatrix& rho);

/// In place Z(a, b) = sum_{k,n} exp(2 pi i (a k + b n) / N) Y(k, n) on a square
/// matrix (unnormalized two-dimensional inverse DFT).
void inverse_dft_2d(ComplexMatrix& m);

} // namespace qmaps

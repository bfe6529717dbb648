#include "helpers.hpp"

#include "qmaps/errors.hpp"
#include "qmaps/selftest.hpp"
#include "qmaps/wigner.hpp"

#include <doctest.h>

using namespace qmaps;
using testing::max_abs;

namespace {

long wrap(long a, long n) { return ((a % n) + n) % n; }

// A(q + s_q N, p + s_p N) = sign * A(q, p) with s_q, s_p in {0, 1}.
double ghost_sign(int q, int p, int n, int sq, int sp) {
  double s = 1;
  if (sq)
    s *= (p % 2 == 0) ? -1 : 1; // (-1)^(p+1)
  if (sp)
    s *= ((q + sq * n) % 2 == 0) ? -1 : 1; // (-1)^(q'+1) with q' = q + sq N
  return s;
}

} // namespace

TEST_CASE("reflection operator") {
  const PhaseSpaceSpec spec(4);
  const auto r = reflection_operator(spec).elements;
  for (int n = 0; n < 4; ++n)
    CHECK(r(3 - n, n) == Complex(1.0));
  for (int n = 1; n <= 16; ++n) {
    const PhaseSpaceSpec s(n);
    const auto rr = reflection_operator(s).elements;
    CHECK(max_abs(rr * rr - ComplexMatrix::Identity(n, n)) < 1e-12);
    CHECK(max_abs(rr - rr.adjoint()) == 0.0);
    if (n <= 8) {
      const auto u = shift_operator(s, Basis::position).elements;
      CHECK(testing::phase_aligned_distance(rr * u * rr, u.adjoint()) < 1e-12);
    }
  }
}

TEST_CASE("point operators") {
  SUBCASE("A(0,0) = R / 2N") {
    const PhaseSpaceSpec spec(5);
    CHECK(max_abs(point_operator(spec, 0, 0).matrix.elements -
                  reflection_operator(spec).elements / 10.0) < 1e-15);
  }
  SUBCASE("Hermitian on the whole lattice") {
    for (int n : {1, 2, 3, 6}) {
      const PhaseSpaceSpec spec(n);
      for (int q = 0; q < 2 * n; ++q)
        for (int p = 0; p < 2 * n; ++p) {
          const auto& a = point_operator(spec, q, p).matrix.elements;
          CHECK(max_abs(a - a.adjoint()) <= 1e-12);
        }
    }
  }
  SUBCASE("they sum to -I") {
    for (int n : {2, 3, 4, 7}) {
      const PhaseSpaceSpec spec(n);
      ComplexMatrix sum = ComplexMatrix::Zero(n, n);
      for (int q = 0; q < 2 * n; ++q)
        for (int p = 0; p < 2 * n; ++p)
          sum += point_operator(spec, q, p).matrix.elements;
      CHECK(max_abs(sum + ComplexMatrix::Identity(n, n)) < 1e-12);
    }
  }
  SUBCASE("translation covariance, N <= 8") {
    for (int n : {2, 3, 5, 8}) {
      const PhaseSpaceSpec spec(n);
      for (int q = 0; q < 2 * n; q += 3)
        for (int p = 1; p < 2 * n; p += 2)
          for (long dq : {-2L, 0L, 1L, 3L})
            for (long dp : {-1L, 2L}) {
              const ComplexMatrix d = displacement(spec, dq, dp).elements;
              const ComplexMatrix lhs = d * point_operator(spec, q, p).matrix.elements * d.adjoint();
              const auto rhs = point_operator(spec, wrap(q + 2 * dq, 2 * n),
                                              wrap(p + 2 * dp, 2 * n));
              CHECK(max_abs(lhs - rhs.matrix.elements) <= 1e-12);
            }
    }
  }
  SUBCASE("ghost relations") {
    const int n = 5;
    const PhaseSpaceSpec spec(n);
    for (int q = 0; q < n; ++q)
      for (int p = 0; p < n; ++p) {
        const auto& a = point_operator(spec, q, p).matrix.elements;
        CHECK(max_abs(point_operator(spec, q + n, p).matrix.elements -
                      ghost_sign(q, p, n, 1, 0) * a) < 1e-13);
        CHECK(max_abs(point_operator(spec, q, p + n).matrix.elements -
                      ghost_sign(q, p, n, 0, 1) * a) < 1e-13);
      }
  }
  SUBCASE("Gram table for N = 4") {
    // Tr(A(x) A(y)) = sign / 4N when y - x is in {0, N}^2, zero otherwise.
    const int n = 4;
    const PhaseSpaceSpec spec(n);
    std::vector<ComplexMatrix> a;
    for (int q = 0; q < 2 * n; ++q)
      for (int p = 0; p < 2 * n; ++p)
        a.push_back(point_operator(spec, q, p).matrix.elements);
    int nonzero = 0;
    for (int q = 0; q < 2 * n; ++q)
      for (int p = 0; p < 2 * n; ++p)
        for (int q2 = 0; q2 < 2 * n; ++q2)
          for (int p2 = 0; p2 < 2 * n; ++p2) {
            const Complex g = (a[q * 2 * n + p] * a[q2 * 2 * n + p2]).trace();
            const int sq = wrap(q2 - q, 2 * n), sp = wrap(p2 - p, 2 * n);
            double expected = 0;
            if ((sq == 0 || sq == n) && (sp == 0 || sp == n)) {
              // Reduce y to x through the ghost relations.
              const int qb = q2 - (q2 >= n ? n : 0), pb = p2 - (p2 >= n ? n : 0);
              const int qa = q - (q >= n ? n : 0), pa = p - (p >= n ? n : 0);
              REQUIRE(qa == qb);
              REQUIRE(pa == pb);
              const double sy = ghost_sign(qb, pb, n, q2 >= n, 0) *
                                ghost_sign(qb + (q2 >= n ? n : 0), pb, n, 0, p2 >= n);
              const double sx = ghost_sign(qa, pa, n, q >= n, 0) *
                                ghost_sign(qa + (q >= n ? n : 0), pa, n, 0, p >= n);
              expected = sx * sy / (4.0 * n);
              ++nonzero;
            }
            CHECK(std::abs(g - expected) < 1e-13);
          }
    CHECK(nonzero == 4 * (2 * n) * (2 * n));
  }
  SUBCASE("labels outside the lattice") {
    CHECK_THROWS_AS(point_operator(PhaseSpaceSpec(3), 6, 0), DomainError);
    CHECK_THROWS_AS(point_operator(PhaseSpaceSpec(3), 0, -1), DomainError);
  }
}

TEST_CASE("Wigner transform") {
  std::mt19937_64 rng(31);
  SUBCASE("position eigenstate, N = 8") {
    const int n = 8;
    const PhaseSpaceSpec spec(n);
    for (int k = 0; k < n; ++k) {
      const auto rho = DensityMatrix::pure(basis_state(spec, Basis::position, k));
      const auto w = wigner_transform(rho, spec);
      const auto direct = wigner_transform_direct(rho, spec);
      CHECK(max_abs((w.values() - direct.values()).cast<Complex>()) < 1e-12);
      const int col = 2 * k + 1, ghost = (2 * k + 1 + n) % (2 * n);
      for (int q = 0; q < 2 * n; ++q)
        for (int p = 0; p < 2 * n; ++p) {
          double expected = 0;
          if (q == col)
            expected = 1.0 / (2 * n);
          else if (q == ghost)
            expected = (p % 2 == 0 ? -1.0 : 1.0) / (2 * n);
          CHECK(std::abs(w(q, p) - expected) < 1e-12);
        }
    }
  }
  SUBCASE("maximally mixed state, even N") {
    // Ghost columns of the position eigenstates fall on odd columns and cancel
    // the even rows: 1/N^2 on the odd sublattice, zero elsewhere.
    const int n = 4;
    const auto w = wigner_transform(DensityMatrix::maximally_mixed(n), PhaseSpaceSpec(n));
    for (int q = 0; q < 2 * n; ++q)
      for (int p = 0; p < 2 * n; ++p) {
        const double expected = (q % 2 == 1 && p % 2 == 1) ? 1.0 / (n * n) : 0.0;
        CHECK(std::abs(w(q, p) - expected) < 1e-12);
      }
  }
  SUBCASE("FFT path matches the point-operator definition and is real") {
    for (int n = 1; n <= 16; ++n) {
      const PhaseSpaceSpec spec(n);
      const auto rho = random_density(n, rng);
      const auto direct = wigner_transform_direct(rho, spec);
      const auto fast = wigner_transform(rho, spec);
      CHECK(direct.imag_residue() <= 1e-10);
      CHECK(fast.imag_residue() <= 1e-10);
      CHECK((fast.values() - direct.values()).cwiseAbs().maxCoeff() <= 1e-10);
    }
  }
  SUBCASE("grid sum and marginals") {
    for (int n : {1, 2, 5, 8, 16}) {
      const PhaseSpaceSpec spec(n);
      const auto rho = random_density(n, rng);
      const auto w = wigner_transform(rho, spec);
      CHECK(std::abs(w.sum() - rho.trace().real()) <= 1e-9);
      const Eigen::VectorXd diag_q = rho.matrix().diagonal().real();
      CHECK((position_marginal(w) - diag_q).cwiseAbs().maxCoeff() <= 1e-9);
      const ComplexMatrix g = fourier_kernel(spec).elements;
      const Eigen::VectorXd diag_p = (g * rho.matrix() * g.adjoint()).diagonal().real();
      CHECK((momentum_marginal(w) - diag_p).cwiseAbs().maxCoeff() <= 1e-9);
    }
  }
  SUBCASE("displacing rho translates the grid by (2 dq, 2 dp)") {
    const int n = 6;
    const PhaseSpaceSpec spec(n);
    const auto rho = random_density(n, rng);
    const auto w = wigner_transform(rho, spec);
    for (auto [dq, dp] : {std::pair{1L, 0L}, std::pair{0L, -2L}, std::pair{3L, 5L}}) {
      const ComplexMatrix d = displacement(spec, dq, dp).elements;
      const auto moved = wigner_transform(DensityMatrix(d * rho.matrix() * d.adjoint()), spec);
      double err = 0;
      for (int q = 0; q < 2 * n; ++q)
        for (int p = 0; p < 2 * n; ++p)
          err = std::max(err, std::abs(moved(q, p) - w(wrap(q - 2 * dq, 2 * n),
                                                       wrap(p - 2 * dp, 2 * n))));
      CHECK(err <= 1e-12);
    }
  }
  SUBCASE("only antiperiodic specs") {
    const PhaseSpaceSpec spec(4, 0.0, 0.5);
    CHECK_THROWS_AS(wigner_transform(DensityMatrix::maximally_mixed(4), spec), DomainError);
    CHECK_THROWS_AS(wigner_transform_direct(DensityMatrix::maximally_mixed(4), spec),
                    DomainError);
  }
}

TEST_CASE("Wigner diffusion") {
  std::mt19937_64 rng(37);
  SUBCASE("alpha = 0 leaves the grid unchanged") {
    const PhaseSpaceSpec spec(6);
    const auto w = wigner_transform(random_density(6, rng), spec);
    const auto out = wigner_diffuse(w, DiffusionChannel(spec, 0.0, 2, 1, 1));
    CHECK((out.values() - w.values()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("commutes with the density-matrix channel, N <= 12") {
    for (int n = 2; n <= 12; ++n) {
      const PhaseSpaceSpec spec(n);
      const auto rho = random_density(n, rng);
      for (Displacement d : {Displacement{0, 1}, Displacement{1, 0}, Displacement{1, -2}}) {
        const DiffusionChannel ch(spec, 0.35, std::min(n, 3), d.dq, d.dp);
        const auto lhs = wigner_transform(apply_diffusion(rho, ch), spec);
        const auto rhs = wigner_diffuse(wigner_transform(rho, spec), ch);
        CHECK((lhs.values() - rhs.values()).cwiseAbs().maxCoeff() <= 1e-10);
      }
    }
  }
  SUBCASE("grid sum preserved") {
    const PhaseSpaceSpec spec(7);
    const auto w = wigner_transform(random_density(7, rng), spec);
    const auto out = wigner_diffuse(w, DiffusionChannel(spec, 0.8, 5, 2, 3));
    CHECK(out.sum() == doctest::Approx(w.sum()).epsilon(1e-14));
  }
  SUBCASE("non-collinear channels are unsupported") {
    const PhaseSpaceSpec spec(4);
    const auto w = wigner_transform(DensityMatrix::maximally_mixed(4), spec);
    const auto mix = DiffusionChannel::mixture(spec, 0.5, {{1, 0}, {0, 1}});
    CHECK_THROWS_AS(wigner_diffuse(w, mix), UnsupportedOperation);
  }
}

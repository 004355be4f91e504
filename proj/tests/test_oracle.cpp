#include <gtest/gtest.h>

#include <cmath>

#include "mzi/errors.hpp"
#include "mzi/oracle.hpp"
#include "test_support.hpp"

namespace mzi::oracle {
namespace {

using interferometer::Port;
using qmath::Complex;
using testing::kPi;
using testing::Sampler;

TEST(EvolveByChain, IdentityLikeSettingsSendEverythingToOnePort) {
  // Balanced splitters at phi = 0 with A = 1: the |b> input exits in |a>.
  const auto rho = evolve_by_chain(BlochVector{0.0, 0.0, 1.0}, DetectorModel(1.0), MziConfig::make(kPi / 2, 0.0));
  EXPECT_NEAR((rho(2, 2) + rho(3, 3)).real(), 1.0, 1e-14);
  EXPECT_NEAR(rho(3, 3).real(), 0.0, 1e-14);
}

TEST(EvolveByChain, ValidDensityOperatorEverywhere) {
  Sampler s(201);
  for (int t = 0; t < 200; ++t) {
    const auto p = s.valid_point();
    const auto rho = evolve_by_chain(p.input, DetectorModel(p.a_overlap, p.chi),
                                     MziConfig::make(p.beta, s.uniform(0, 2 * kPi)));
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
  }
}

TEST(VisibilityByScan, Examples) {
  const BlochVector plus_z{0.0, 0.0, 1.0};
  EXPECT_NEAR(visibility_by_scan(plus_z, DetectorModel(1.0), kPi / 2), 1.0, 1e-9);
  EXPECT_NEAR(visibility_by_scan(plus_z, DetectorModel(0.0), kPi / 2), 0.0, 1e-12);
  EXPECT_NEAR(visibility_by_scan(plus_z, DetectorModel(0.5), kPi / 2), 0.5, 1e-9);
  // Incoherent input: no fringes regardless of the detector.
  EXPECT_NEAR(visibility_by_scan(BlochVector{0.3, 0.0, 0.0}, DetectorModel(1.0), 1.0), 0.0, 1e-12);
}

TEST(VisibilityByScan, DarkPortIsUndefined) {
  // S_x = 1 and beta = pi: the particle always leaves through port b.
  EXPECT_THROW(visibility_by_scan(BlochVector{1.0, 0.0, 0.0}, DetectorModel(0.5), kPi), UndefinedVisibility);
  EXPECT_THROW(visibility_by_scan(BlochVector{-1.0, 0.0, 0.0}, DetectorModel(0.5), 0.0), UndefinedVisibility);
}

TEST(VisibilityByScan, ConvergesWithScanDensity) {
  const BlochVector in{0.2, 0.5, 0.7};
  const DetectorModel det(0.6, 0.9);
  const double fine = visibility_by_scan(in, det, 1.2, GridSpec{8, 8, 8192});
  for (int steps : {64, 512, 4096}) {
    EXPECT_NEAR(visibility_by_scan(in, det, 1.2, GridSpec{8, 8, steps}), fine, 1e-9);
  }
}

TEST(VisibilityByScan, PortsDifferForAsymmetricSplitter) {
  const BlochVector in{0.5, 0.0, std::sqrt(0.75)};
  const DetectorModel det(1.0);
  const double va = visibility_by_scan(in, det, kPi / 3, {}, Port::A);
  const double vb = visibility_by_scan(in, det, kPi / 3, {}, Port::B);
  EXPECT_GT(std::abs(va - vb), 0.1);
}

TEST(GridSearch, RejectsTinyGrids) {
  EXPECT_THROW((GridSpec{4, 360, 4096}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{360, 7, 4096}.validate()), InvalidInput);
  EXPECT_THROW((GridSpec{360, 360, 2}.validate()), InvalidInput);
  EXPECT_NO_THROW(GridSpec{}.validate());
}

TEST(GridSearch, BasisAtIsOrthonormal) {
  Sampler s(211);
  for (int t = 0; t < 100; ++t) {
    const auto b = basis_at(s.uniform(0, kPi), s.uniform(0, 2 * kPi));
    EXPECT_NEAR(std::abs(qmath::inner(b.m_a, b.m_b)), 0.0, 1e-15);
  }
}

TEST(GridSearch, PureStateReachesParticleEntropy) {
  Sampler s(223);
  for (int t = 0; t < 5; ++t) {
    const auto p = s.valid_point(true);
    const auto st = correlations::build_pure_output(p.input, DetectorModel(p.a_overlap, p.chi), p.beta);
    const double s_q = qmath::von_neumann_entropy(qmath::partial_trace(st.rho, qmath::Subsystem::Detector));
    EXPECT_NEAR(cc_by_grid_search(st, GridSpec{60, 60, 8}).value, s_q, 1e-9);
  }
}

TEST(GridSearch, OrthogonalPointersFoundExactly) {
  const DetectorModel det(0.0);
  const auto st = correlations::build_mixed_output(BlochVector{0.4, 0.0, std::sqrt(0.84)}, det, 1.0);
  const auto result = cc_by_grid_search(st);
  EXPECT_NEAR(result.value, qmath::binary_entropy(st.weights.omega_a), 1e-9);
  // The winning measurement reads |r> vs U|r> (in some order).
  const double overlap = std::abs(qmath::inner(result.best_basis.m_b, det.ready_state()));
  const double swapped = std::abs(qmath::inner(result.best_basis.m_a, det.ready_state()));
  EXPECT_NEAR(std::max(overlap, swapped), 1.0, 1e-6);
}

TEST(GridSearch, MinErrorBasisIsOptimalForMixedState) {
  Sampler s(227);
  for (int t = 0; t < 12; ++t) {
    const auto p = s.valid_point();
    const auto st = correlations::build_mixed_output(p.input, DetectorModel(p.a_overlap, p.chi), p.beta);
    const double closed = correlations::classical_correlation_mixed(st);
    const double grid = cc_by_grid_search(st, GridSpec{120, 120, 8}).value;
    EXPECT_NEAR(closed, grid, 1e-4);
    // Coordinate descent ends at a local maximum of a smooth function, so
    // it cannot overshoot the true optimum by more than rounding.
    EXPECT_LE(grid, closed + 1e-9);
  }
}

TEST(GridSearch, RefinementNeverDecreasesValue) {
  const auto st =
      correlations::build_mixed_output(BlochVector{0.1, 0.3, 0.6}, DetectorModel(0.4, 0.3), 2.0);
  double previous = -1.0;
  for (int n : {8, 16, 64, 256}) {
    const double v = cc_by_grid_search(st, GridSpec{n, n, 8}).value;
    EXPECT_GE(v, previous - 1e-9);
    previous = v;
  }
}

TEST(CharacteristicPolynomial, DiagonalCoefficients) {
  const Complex d[] = {1.0, 2.0, 3.0, 4.0};
  const auto c = characteristic_polynomial(qmath::ComplexMatrix::diagonal(d));
  // (x-1)(x-2)(x-3)(x-4) = x^4 - 10x^3 + 35x^2 - 50x + 24
  const double expected[] = {24.0, -50.0, 35.0, -10.0, 1.0};
  for (int k = 0; k < 5; ++k) EXPECT_NEAR(c[k], expected[k], 1e-12);
  const auto roots = eigen_by_charpoly(qmath::ComplexMatrix::diagonal(d));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(roots[k], k + 1.0, 1e-12);
}

TEST(CharacteristicPolynomial, TwoByTwoAndRepeatedRoots) {
  const auto sy = eigen_by_charpoly(qmath::pauli_y());
  EXPECT_NEAR(sy[0], -1.0, 1e-15);
  EXPECT_NEAR(sy[1], 1.0, 1e-15);
  const auto id = eigen_by_charpoly(qmath::ComplexMatrix::identity(4) * Complex{0.25});
  for (double r : id) EXPECT_NEAR(r, 0.25, 1e-7);
  EXPECT_THROW(eigen_by_charpoly(qmath::ComplexMatrix(2, {0.0, 1.0, 0.0, 0.0})), InvalidInput);
}

TEST(CharacteristicPolynomial, RankDeficientOutputStates) {
  // Mixed outputs have a double zero eigenvalue and pure outputs a triple
  // one. Rounding of order 1e-18 in the coefficients moves an m-fold root by
  // about (1e-18)^(1/m), so only isolated roots are compared directly; the
  // repeated ones are checked through the polynomial residual.
  Sampler s(229);
  for (int t = 0; t < 2000; ++t) {
    const auto p = s.valid_point();
    const DetectorModel det(p.a_overlap, p.chi);
    for (const auto& st : {correlations::build_mixed_output(p.input, det, p.beta),
                           correlations::build_pure_output(p.input, det, p.beta)}) {
      const auto jacobi = qmath::hermitian_eigen(st.rho.matrix()).values;
      const auto roots = eigen_by_charpoly(st.rho.matrix());
      const auto coeffs = characteristic_polynomial(st.rho.matrix());
      for (int k = 0; k < 4; ++k) {
        double residual = 0.0;
        for (int i = 4; i >= 0; --i) residual = residual * jacobi[k] + coeffs[i];
        EXPECT_LT(std::abs(residual), 1e-14);
        const double gap = std::min(k > 0 ? jacobi[k] - jacobi[k - 1] : 1.0, k < 3 ? jacobi[k + 1] - jacobi[k] : 1.0);
        if (gap > 1e-3) EXPECT_NEAR(jacobi[k], roots[k], 1e-8);
        EXPECT_NEAR(jacobi[k], roots[k], 1e-5);
      }
    }
  }
}

}  // namespace
}  // namespace mzi::oracle

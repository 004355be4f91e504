#pragma once

// Brute-force reference computations. None of these routines shares
// closed-form algebra with the interferometer or correlations modules.

#include <vector>

#include "mzi/correlations.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/qmath.hpp"

namespace mzi::oracle {

using correlations::JointOutputState;
using correlations::MeasurementBasis;
using interferometer::BlochVector;
using interferometer::DetectorModel;
using interferometer::MziConfig;
using qmath::ComplexMatrix;
using qmath::DensityOperator;

struct GridSpec {
  int theta_steps = 360;
  int phi_steps = 360;
  int phi_scan_steps = 4096;

  // Throws InvalidInput if any count is below 8.
  void validate() const;
};

// U_B(beta) M U_P(phi) U_B(pi/2) (rho_Q (x) |r><r|) (...)^dagger, multiplied
// out matrix by matrix.
DensityOperator evolve_by_chain(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg);
// Unvalidated chain product, for tight loops.
ComplexMatrix evolve_by_chain_raw(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg);

// (max - min)/(max + min) of the port-a click probability over the phase
// shifter, from a uniform scan refined by golden-section search.
// Throws UndefinedVisibility when max + min < 1e-14.
double visibility_by_scan(const BlochVector& input, const DetectorModel& det, double beta,
                          const GridSpec& spec = {}, interferometer::Port port = interferometer::Port::A);

struct GridSearchResult {
  double value = 0.0;
  MeasurementBasis best_basis;
  double theta = 0.0;
  double phi = 0.0;
};

// Maximum over projective detector measurements
//   m_a = (cos(t/2), e^{i p} sin(t/2)),  m_b = (-e^{-i p} sin(t/2), cos(t/2))
// with t on theta_steps + 1 points of [0, pi] and p on phi_steps points of
// [0, 2 pi), followed by coordinate descent down to a step below 1e-5 rad.
// Ties keep the lowest theta, then the lowest phi.
GridSearchResult cc_by_grid_search(const JointOutputState& state, const GridSpec& spec = {});

// Measurement basis at Bloch angles (theta, phi).
MeasurementBasis basis_at(double theta, double phi);

// Eigenvalues from the characteristic polynomial: the quadratic formula for
// 2x2; for 4x4, Faddeev-LeVerrier coefficients and roots bracketed
// between the critical points (interlacing) and bisected.
// Throws InvalidInput for non-Hermitian input (1e-10).
std::vector<double> eigen_by_charpoly(const ComplexMatrix& m);

// Coefficients c_0..c_n of det(x I - m), c_n = 1.
std::vector<double> characteristic_polynomial(const ComplexMatrix& m);

}  // namespace mzi::oracle

#pragma once

// Mach-Zehnder interferometer with a symmetric first beam splitter, one
// phase shifter, a which-path detector (WPD) on path a, and an asymmetric
// second beam splitter.
//
// Conventions:
//   * particle basis (|b>, |a>), sigma_z = |b><b| - |a><a|
//   * detector basis (|r>, |r_perp>), the WPD starts in |r><r|
//   * U|r> = A e^{i chi} |r> + sqrt(1 - A^2) |r_perp>
//   * U_P(phi) = exp(-i phi sigma_z) shifts the relative path phase by 2 phi
//   * output port a is the projector (1 - sigma_z)/2 on the particle

#include "mzi/qmath.hpp"

namespace mzi::interferometer {

using qmath::ComplexMatrix;
using qmath::DensityOperator;

// Particle input state rho = (1 + S.sigma)/2.
struct BlochVector {
  double s_x = 0.0;
  double s_y = 0.0;
  double s_z = 0.0;

  // Throws InvalidInput if |S|^2 > 1 + 1e-12 or any component is not finite.
  void validate() const;
  double norm() const;
  // sqrt(S_y^2 + S_z^2): amplitude of the path coherence after BS1.
  double coherence() const;
  DensityOperator density() const;
};

struct MziConfig {
  double beta = 0.0;  // BS2 angle, [0, pi]
  double phi = 0.0;   // phase shifter, normalized to [0, 2 pi)

  // Throws InvalidInput if beta lies outside [0, pi] (1e-12 slack, clamped)
  // or either value is not finite.
  static MziConfig make(double beta, double phi);
};

class DetectorModel {
 public:
  // a_overlap = |<r|U|r>| in [0, 1], chi = arg <r|U|r>.
  // Throws InvalidInput outside the domain.
  explicit DetectorModel(double a_overlap, double chi = 0.0);

  double a_overlap() const { return a_overlap_; }
  double chi() const { return chi_; }
  double s_orth() const { return s_orth_; }

  // 2x2 unitary on the detector with <r|U|r> = A e^{i chi}.
  ComplexMatrix unitary() const;
  qmath::StateVector ready_state() const;   // |r>
  qmath::StateVector marked_state() const;  // U|r>
  DensityOperator initial_state() const;    // |r><r|

 private:
  double a_overlap_;
  double chi_;
  double s_orth_;
};

struct PathWeights {
  double omega_a = 0.0;
  double omega_b = 0.0;
};

enum class Port { A, B };

ComplexMatrix bs_unitary(double beta);
ComplexMatrix phase_unitary(double phi);
// M = |b><b| (x) I + |a><a| (x) U
ComplexMatrix marking_operator(const DetectorModel& det);

// Joint particle-detector state at the output. Built from the closed-form
// four-term expansion; the oracle module provides the explicit matrix chain.
DensityOperator evolve(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg);

// 1 + S_x cos(beta); throws DegenerateConfiguration when |value| < 1e-12.
double port_a_normalizer(const BlochVector& input, double beta);

PathWeights path_weights(const BlochVector& input, const MziConfig& cfg);
PathWeights path_weights(const BlochVector& input, double beta);

// tr[(port projector (x) I) rho_f] from the evolved state.
double detection_probability(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg,
                             Port port = Port::A);
// Interference formula: (1 + S_x cos b)/2 + (A/2) sqrt(S_z^2+S_y^2) sin b cos(alpha + chi + 2 phi)
// for port a, with alpha = arg(S_z + i S_y). Port b is the complement.
double detection_probability_closed_form(const BlochVector& input, const DetectorModel& det,
                                         const MziConfig& cfg, Port port = Port::A);
// alpha = arg(S_z + i S_y)
double coherence_phase(const BlochVector& input);

// V = A sin(beta) sqrt(S_z^2 + S_y^2) / (1 +- S_x cos beta) (+ for port a).
double fringe_visibility(const BlochVector& input, const DetectorModel& det, double beta, Port port = Port::A);

// Detector state weighted by the post-selected path weights:
// omega_b |r><r| + omega_a U|r><r|U^dagger.
DensityOperator weighted_detector_state(const BlochVector& input, const DetectorModel& det, double beta);
// tr_particle of the evolved joint state (no post-selection).
DensityOperator unconditional_detector_state(const BlochVector& input, const DetectorModel& det,
                                             const MziConfig& cfg);
// Detector state conditioned on a click at port a, averaged uniformly over
// the phase-shifter setting. Equals weighted_detector_state.
DensityOperator phase_averaged_port_a_detector_state(const BlochVector& input, const DetectorModel& det,
                                                     double beta);

}  // namespace mzi::interferometer

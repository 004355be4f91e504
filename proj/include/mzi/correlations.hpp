#pragma once

// Correlations between the particle path and the which-path detector at the
// interferometer output. Measurements act on the detector side; entropies
// are in bits.

#include "mzi/interferometer.hpp"
#include "mzi/qmath.hpp"

#include <utility>

namespace mzi::correlations {

using interferometer::BlochVector;
using interferometer::DetectorModel;
using interferometer::PathWeights;
using qmath::DensityOperator;
using qmath::StateVector;

enum class StateKind { Pure, Mixed };

const char* to_string(StateKind kind);

// Projective detector measurement {|m_a><m_a|, |m_b><m_b|}. For the
// minimum-error basis the vectors take the form
//   m_a ~ -sin(gamma)|r> - cos(gamma) e^{-i chi}|r_perp>
//   m_b ~  cos(gamma)|r> - sin(gamma) e^{-i chi}|r_perp>
// with cos(gamma) = -1/a_a and sin(gamma) = -1/a_b.
struct MeasurementBasis {
  StateVector m_a = StateVector::basis(2, 0);
  StateVector m_b = StateVector::basis(2, 1);
  double gamma = 0.0;
  double a_a = 0.0;
  double a_b = 0.0;
};

struct JointOutputState {
  StateKind kind;
  DensityOperator rho;
  PathWeights weights;
  DetectorModel det;
  BlochVector input;
  double beta;
};

// rho_1 = |psi><psi|, |psi> = sqrt(w_a)|a>(x)U|r> + sqrt(w_b)|b>(x)|r>.
JointOutputState build_pure_output(const BlochVector& input, const DetectorModel& det, double beta);
// rho_2 = w_a |a><a|(x)U|r><r|U^dagger + w_b |b><b|(x)|r><r|.
JointOutputState build_mixed_output(const BlochVector& input, const DetectorModel& det, double beta);

// Eigenbasis of w_a U|r><r|U^dagger - w_b |r><r|, m_a belonging to the
// positive eigenvalue; vectors carry canonical global phase.
// Throws IndistinguishableStates for A = 1, SingleHypothesis for w_a in {0, 1}.
MeasurementBasis min_error_basis(const PathWeights& weights, const DetectorModel& det);

// The same basis from the explicit normalizers and expansion coefficients.
// Requires 0 < A < 1 (the expressions divide by A); canonical phase applied.
MeasurementBasis min_error_basis_explicit(const PathWeights& weights, const DetectorModel& det);

// Real basis of the minimum-error form for an arbitrary angle gamma.
MeasurementBasis basis_from_angle(double gamma, const DetectorModel& det);

// Closed-form normalizers (a_a, a_b) of the minimum-error basis, 0 < A < 1.
std::pair<double, double> min_error_normalizers(const PathWeights& weights, double a_overlap);

// S(rho^Q) - sum_k p_k S(rho^Q | k) for the detector measurement {m_a, m_b},
// computed directly from the joint density operator. Outcomes with
// p_k < 1e-14 contribute zero.
double measured_information(const DensityOperator& rho, const StateVector& m_a, const StateVector& m_b);

// Closed form in terms of B = 1 + S_x cos(beta). Throws WrongStateKind unless pure.
double classical_correlation_pure(const JointOutputState& state);

// Closed form in terms of the basis angle gamma with S = sqrt(1 - A^2).
// Throws WrongStateKind unless mixed.
double classical_correlation_mixed(const JointOutputState& state, const MeasurementBasis& basis);
// With the minimum-error basis; exact 0 when A = 1 or one path weight vanishes.
double classical_correlation_mixed(const JointOutputState& state);

// Closed form of the mixed-state classical correlation as a function of the
// basis angle.
double mixed_cc_closed_form(const PathWeights& weights, double a_overlap, double gamma);

double mutual_information(const JointOutputState& state);
double quantum_discord(const JointOutputState& state);

// h((1 + A)/2), reached at cos(beta) = -S_x.
double max_classical_correlation(double a_overlap);

struct CorrelationReport {
  double visibility = 0.0;
  double j_cc = 0.0;
  double discord = 0.0;
  double mutual_info = 0.0;
  double j_squared_plus_v_squared = 0.0;
  StateKind state_kind = StateKind::Pure;
};

CorrelationReport make_report(const JointOutputState& state);

struct ComplementarityDiagnostic {
  static constexpr double kViolationTol = 1e-9;

  double j_sq_plus_v_sq = 0.0;
  double d_sq_plus_v_sq = 0.0;
  // 1 - sum; negative means the bound is exceeded.
  double j_saturation_gap = 0.0;
  double d_saturation_gap = 0.0;
  bool j_violated = false;
  bool d_violated = false;
  bool j_saturated = false;  // |gap| <= 1e-9
};

ComplementarityDiagnostic complementarity_check(const CorrelationReport& report);

}  // namespace mzi::correlations

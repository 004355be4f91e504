#include "mzi/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mzi/errors.hpp"

namespace mzi::correlations {

using qmath::Complex;
using qmath::ComplexMatrix;

namespace {

constexpr double kNegligibleOutcome = 1e-14;
constexpr double kWeightEdge = 1e-14;
constexpr double kOverlapEdge = 1e-12;

// p log2(p / total), zero when p vanishes.
double plogq(double p, double total) { return p > 0.0 ? p * std::log2(p / total) : 0.0; }

// Entropy of a 2x2 Hermitian PSD matrix with unit trace, from its spectrum.
double qubit_entropy(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
  const double mean = 0.5 * (a + d);
  const double spectrum[] = {mean + half_gap, std::max(0.0, mean - half_gap)};
  return qmath::shannon_entropy(spectrum);
}

StateVector two_amplitudes(Complex x0, Complex x1) {
  const Complex amp[] = {x0, x1};
  return StateVector::normalized(amp);
}

void require_kind(const JointOutputState& state, StateKind kind) {
  if (state.kind != kind) {
    throw WrongStateKind(std::string("expected a ") + to_string(kind) + " output state, got " +
                         to_string(state.kind));
  }
}

void check_distinguishable(const PathWeights& weights, const DetectorModel& det) {
  if (det.a_overlap() > 1.0 - kOverlapEdge) {
    throw IndistinguishableStates("A = 1: detector states coincide, minimum-error basis undefined");
  }
  if (weights.omega_a < kWeightEdge || weights.omega_b < kWeightEdge) {
    throw SingleHypothesis("one path weight vanishes: nothing to discriminate");
  }
}

// gamma in [pi, 3pi/2] from the magnitudes of m_a's components along |r>
// and e^{-i chi}|r_perp>.
double gamma_from_components(double r_mag, double perp_mag) {
  double g = std::atan2(-r_mag, -perp_mag);
  if (g < 0.0) g += 2.0 * std::numbers::pi;
  return g;
}

MeasurementBasis finish_basis(StateVector m_a, StateVector m_b) {
  const double r_mag = std::abs(m_a[0]);
  const double perp_mag = std::abs(m_a[1]);
  MeasurementBasis basis{m_a.canonical_phase(), m_b.canonical_phase(), 0.0, 0.0, 0.0};
  basis.gamma = gamma_from_components(r_mag, perp_mag);
  basis.a_a = -1.0 / std::cos(basis.gamma);
  const double sg = std::sin(basis.gamma);
  basis.a_b = sg == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / sg;
  return basis;
}

}  // namespace

const char* to_string(StateKind kind) { return kind == StateKind::Pure ? "pure" : "mixed"; }

// ---------------------------------------------------------------------------
// Output states

JointOutputState build_pure_output(const BlochVector& input, const DetectorModel& det, double beta) {
  const auto w = interferometer::path_weights(input, beta);
  const auto s = det.marked_state();
  // index = 2 * path + detector, path b = 0, a = 1
  const Complex amp[] = {std::sqrt(w.omega_b), 0.0, std::sqrt(w.omega_a) * s[0], std::sqrt(w.omega_a) * s[1]};
  const auto psi = StateVector::normalized(amp);
  DensityOperator rho = DensityOperator::pure(psi);
  const auto eig = qmath::hermitian_eigen(rho.matrix());
  if (eig.values[2] > 1e-10) throw InvariantViolation("pure output state is not rank one");
  return JointOutputState{StateKind::Pure, rho, w, det, input, beta};
}

JointOutputState build_mixed_output(const BlochVector& input, const DetectorModel& det, double beta) {
  const auto w = interferometer::path_weights(input, beta);
  const auto proj_a = ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0});
  const auto proj_b = ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0});
  auto m = qmath::tensor_product(proj_a, qmath::projector(det.marked_state())) * Complex{w.omega_a};
  m += qmath::tensor_product(proj_b, qmath::projector(det.ready_state())) * Complex{w.omega_b};
  return JointOutputState{StateKind::Mixed, DensityOperator(m), w, det, input, beta};
}

// ---------------------------------------------------------------------------
// Minimum-error measurement

MeasurementBasis min_error_basis(const PathWeights& weights, const DetectorModel& det) {
  check_distinguishable(weights, det);
  const auto diff = qmath::projector(det.marked_state()) * Complex{weights.omega_a} -
                    qmath::projector(det.ready_state()) * Complex{weights.omega_b};
  const auto eig = qmath::hermitian_eigen(diff);
  return finish_basis(eig.vectors[1], eig.vectors[0]);
}

std::pair<double, double> min_error_normalizers(const PathWeights& weights, double a_overlap) {
  const double wa = weights.omega_a;
  const double wb = weights.omega_b;
  const double a2 = a_overlap * a_overlap;
  const double root = std::sqrt(1.0 - 4.0 * wa * wb * a2);
  const double denom = 2.0 * wa * wa * a2 * (1.0 - a2);
  const double num_a = 1.0 - 4.0 * wa * wb * a2 - root * (1.0 - 2.0 * wa * a2);
  const double num_b = 1.0 - 4.0 * wa * wb * a2 + root * (1.0 - 2.0 * wa * a2);
  return {std::sqrt(num_a / denom), std::sqrt(num_b / denom)};
}

MeasurementBasis min_error_basis_explicit(const PathWeights& weights, const DetectorModel& det) {
  check_distinguishable(weights, det);
  const double a = det.a_overlap();
  if (a <= 0.0) throw InvalidInput("explicit minimum-error basis divides by A; use min_error_basis at A = 0");
  const double s = det.s_orth();
  const double wa = weights.omega_a;
  const double root = std::sqrt(1.0 - 4.0 * wa * weights.omega_b * a * a);
  const auto [norm_a, norm_b] = min_error_normalizers(weights, a);
  const double k_a = (1.0 - root) / (2.0 * wa * a);
  const double k_b = (1.0 + root) / (2.0 * wa * a);

  // M_k = (U|r> - k e^{i chi}|r>) / (A_k S). The e^{i chi} keeps the
  // expansion valid when <r|U|r> is complex; at chi = 0 it is the plain form.
  const auto marked = det.marked_state();
  const Complex phase = std::polar(1.0, det.chi());
  auto build = [&](double k, double norm) {
    const Complex x0 = (marked[0] - k * phase) / (norm * s);
    const Complex x1 = marked[1] / (norm * s);
    const double n = std::sqrt(std::norm(x0) + std::norm(x1));
    if (std::abs(n - 1.0) > 1e-9) {
      throw InvariantViolation("explicit minimum-error vector has norm " + std::to_string(n));
    }
    return two_amplitudes(x0, x1);
  };
  MeasurementBasis basis{build(k_a, norm_a).canonical_phase(), build(k_b, norm_b).canonical_phase(), 0.0, norm_a,
                         norm_b};
  basis.gamma = gamma_from_components(1.0 / norm_b, 1.0 / norm_a);
  return basis;
}

MeasurementBasis basis_from_angle(double gamma, const DetectorModel& det) {
  const Complex perp_phase = std::polar(1.0, -det.chi());
  const double c = std::cos(gamma);
  const double s = std::sin(gamma);
  MeasurementBasis basis{two_amplitudes(-s, -c * perp_phase), two_amplitudes(c, -s * perp_phase), gamma, 0.0, 0.0};
  basis.a_a = c == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / c;
  basis.a_b = s == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / s;
  return basis;
}

// ---------------------------------------------------------------------------
// Correlations

double measured_information(const DensityOperator& rho, const StateVector& m_a, const StateVector& m_b) {
  if (rho.dim() != 4 || m_a.dim() != 2 || m_b.dim() != 2) {
    throw InvalidDimension("measured_information expects a two-qubit state and detector vectors");
  }
  const auto particle = qmath::partial_trace(rho.matrix(), qmath::Subsystem::Detector);
  double conditional = 0.0;
  for (const StateVector* m : {&m_a, &m_b}) {
    // (I (x) <m|) rho (I (x) |m>)
    ComplexMatrix sigma(2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Complex acc = 0.0;
        for (int d = 0; d < 2; ++d)
          for (int e = 0; e < 2; ++e) acc += std::conj((*m)[d]) * rho(2 * i + d, 2 * j + e) * (*m)[e];
        sigma(i, j) = acc;
      }
    const double p = sigma.trace().real();
    if (p < kNegligibleOutcome) continue;
    conditional += p * qubit_entropy(sigma * Complex{1.0 / p});
  }
  return qubit_entropy(particle) - conditional;
}

double classical_correlation_pure(const JointOutputState& state) {
  require_kind(state, StateKind::Pure);
  const double sx = state.input.s_x;
  const double b = interferometer::port_a_normalizer(state.input, state.beta);
  const double sb = std::sin(state.beta);
  const double a = state.det.a_overlap();
  const double disc = std::sqrt(std::max(0.0, b * b - sb * sb * (1.0 - sx * sx) * (1.0 - a * a)));
  const double hi = (b + disc) / (2.0 * b);
  const double lo = (b - disc) / (2.0 * b);
  const double probs[] = {hi, lo};
  return qmath::shannon_entropy(probs);
}

double mixed_cc_closed_form(const PathWeights& weights, double a_overlap, double gamma) {
  const double wa = weights.omega_a;
  const double wb = weights.omega_b;
  const double a = a_overlap;
  const double s = std::sqrt(std::max(0.0, 1.0 - a * a));
  const double sg = std::sin(gamma);
  const double cg = std::cos(gamma);
  const double x = s * sg - a * cg;
  const double y = a * sg + s * cg;
  const double pa1 = wa * x * x;
  const double pb1 = wb * cg * cg;
  const double pa2 = wa * y * y;
  const double pb2 = wb * sg * sg;
  return -plogq(wb, 1.0) - plogq(wa, 1.0) + plogq(pa1, pa1 + pb1) + plogq(pb1, pa1 + pb1) +
         plogq(pa2, pa2 + pb2) + plogq(pb2, pa2 + pb2);
}

double classical_correlation_mixed(const JointOutputState& state, const MeasurementBasis& basis) {
  require_kind(state, StateKind::Mixed);
  return mixed_cc_closed_form(state.weights, state.det.a_overlap(), basis.gamma);
}

double classical_correlation_mixed(const JointOutputState& state) {
  require_kind(state, StateKind::Mixed);
  if (state.det.a_overlap() > 1.0 - kOverlapEdge || state.weights.omega_a < kWeightEdge ||
      state.weights.omega_b < kWeightEdge) {
    return 0.0;
  }
  return classical_correlation_mixed(state, min_error_basis(state.weights, state.det));
}

double mutual_information(const JointOutputState& state) {
  const auto particle = qmath::partial_trace(state.rho, qmath::Subsystem::Detector);
  const auto detector = qmath::partial_trace(state.rho, qmath::Subsystem::Particle);
  return qmath::von_neumann_entropy(particle) + qmath::von_neumann_entropy(detector) -
         qmath::von_neumann_entropy(state.rho);
}

double quantum_discord(const JointOutputState& state) {
  if (state.kind == StateKind::Pure) return classical_correlation_pure(state);
  return mutual_information(state) - classical_correlation_mixed(state);
}

double max_classical_correlation(double a_overlap) {
  if (!(a_overlap >= 0.0 && a_overlap <= 1.0)) {
    throw InvalidInput("a_overlap = " + std::to_string(a_overlap) + " lies outside [0, 1]");
  }
  return qmath::binary_entropy(0.5 * (1.0 + a_overlap));
}

// ---------------------------------------------------------------------------
// Reports

CorrelationReport make_report(const JointOutputState& state) {
  CorrelationReport r;
  r.state_kind = state.kind;
  r.visibility = interferometer::fringe_visibility(state.input, state.det, state.beta);
  r.j_cc = state.kind == StateKind::Pure ? classical_correlation_pure(state) : classical_correlation_mixed(state);
  r.discord = quantum_discord(state);
  r.mutual_info = mutual_information(state);
  r.j_squared_plus_v_squared = r.j_cc * r.j_cc + r.visibility * r.visibility;
  return r;
}

ComplementarityDiagnostic complementarity_check(const CorrelationReport& report) {
  constexpr double tol = ComplementarityDiagnostic::kViolationTol;
  ComplementarityDiagnostic d;
  const double v2 = report.visibility * report.visibility;
  d.j_sq_plus_v_sq = report.j_cc * report.j_cc + v2;
  d.d_sq_plus_v_sq = report.discord * report.discord + v2;
  d.j_saturation_gap = 1.0 - d.j_sq_plus_v_sq;
  d.d_saturation_gap = 1.0 - d.d_sq_plus_v_sq;
  d.j_violated = d.j_sq_plus_v_sq > 1.0 + tol;
  d.d_violated = d.d_sq_plus_v_sq > 1.0 + tol;
  d.j_saturated = std::abs(d.j_saturation_gap) <= tol;
  return d;
}

}  // namespace mzi::correlations

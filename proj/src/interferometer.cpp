#include "mzi/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "mzi/errors.hpp"

namespace mzi::interferometer {

using qmath::Complex;
using qmath::kI;
using qmath::StateVector;
using qmath::tensor_product;

namespace {

constexpr double kDegenerateTol = 1e-12;
constexpr double kDomainSlack = 1e-12;

bool finite(double x) { return std::isfinite(x); }

}  // namespace

// ---------------------------------------------------------------------------
// Domain types

void BlochVector::validate() const {
  if (!finite(s_x) || !finite(s_y) || !finite(s_z)) {
    throw InvalidInput("Bloch vector components must be finite");
  }
  const double n2 = s_x * s_x + s_y * s_y + s_z * s_z;
  if (n2 > 1.0 + kDomainSlack) {
    throw InvalidInput("Bloch vector norm " + std::to_string(std::sqrt(n2)) + " exceeds 1");
  }
}

double BlochVector::norm() const { return std::sqrt(s_x * s_x + s_y * s_y + s_z * s_z); }

double BlochVector::coherence() const { return std::sqrt(s_z * s_z + s_y * s_y); }

DensityOperator BlochVector::density() const {
  validate();
  auto m = ComplexMatrix::identity(2);
  m += qmath::pauli_x() * Complex{s_x};
  m += qmath::pauli_y() * Complex{s_y};
  m += qmath::pauli_z() * Complex{s_z};
  return DensityOperator(m * Complex{0.5});
}

MziConfig MziConfig::make(double beta, double phi) {
  if (!finite(beta) || !finite(phi)) throw InvalidInput("beta and phi must be finite");
  if (beta < -kDomainSlack || beta > std::numbers::pi + kDomainSlack) {
    throw InvalidInput("beta = " + std::to_string(beta) + " lies outside [0, pi]");
  }
  MziConfig cfg;
  cfg.beta = std::clamp(beta, 0.0, std::numbers::pi);
  cfg.phi = std::fmod(phi, 2.0 * std::numbers::pi);
  if (cfg.phi < 0.0) cfg.phi += 2.0 * std::numbers::pi;
  return cfg;
}

DetectorModel::DetectorModel(double a_overlap, double chi) : a_overlap_(a_overlap), chi_(chi) {
  if (!finite(a_overlap) || !finite(chi)) throw InvalidInput("detector parameters must be finite");
  if (a_overlap < -kDomainSlack || a_overlap > 1.0 + kDomainSlack) {
    throw InvalidInput("a_overlap = " + std::to_string(a_overlap) + " lies outside [0, 1]");
  }
  a_overlap_ = std::clamp(a_overlap, 0.0, 1.0);
  s_orth_ = std::sqrt(std::max(0.0, 1.0 - a_overlap_ * a_overlap_));
}

ComplexMatrix DetectorModel::unitary() const {
  const Complex overlap = std::polar(a_overlap_, chi_);
  // Columns U|r> and U|r_perp>.
  return ComplexMatrix(2, {overlap, -s_orth_, s_orth_, std::conj(overlap)});
}

StateVector DetectorModel::ready_state() const { return StateVector::basis(2, 0); }

StateVector DetectorModel::marked_state() const {
  return StateVector{std::polar(a_overlap_, chi_), Complex{s_orth_}};
}

DensityOperator DetectorModel::initial_state() const { return DensityOperator::pure(ready_state()); }

// ---------------------------------------------------------------------------
// Operators

ComplexMatrix bs_unitary(double beta) {
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  // cos(b/2) I - i sin(b/2) sigma_y
  return ComplexMatrix(2, {c, -s, s, c});
}

ComplexMatrix phase_unitary(double phi) {
  const Complex diag[] = {std::polar(1.0, -phi), std::polar(1.0, phi)};
  return ComplexMatrix::diagonal(diag);
}

ComplexMatrix marking_operator(const DetectorModel& det) {
  const auto proj_b = ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0});
  const auto proj_a = ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0});
  return tensor_product(proj_b, ComplexMatrix::identity(2)) + tensor_product(proj_a, det.unitary());
}

// ---------------------------------------------------------------------------
// Evolution

DensityOperator evolve(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg) {
  input.validate();
  const double cb = std::cos(cfg.beta);
  const double sb = std::sin(cfg.beta);
  const auto id = ComplexMatrix::identity(2);
  const auto sx = qmath::pauli_x();
  const auto sy = qmath::pauli_y();
  const auto sz = qmath::pauli_z();

  const auto rho_d = det.initial_state().matrix();
  const auto u = det.unitary();
  const auto rho_d_udag = rho_d * u.adjoint();
  const auto u_rho_d = u * rho_d;
  const auto u_rho_d_udag = u * rho_d * u.adjoint();

  // Path b population after BS2, path a population, and the two coherence
  // terms. The coherence picks up e^{-+2 i phi} from U_P(phi).
  const auto b_branch = id + sz * Complex{cb} + sx * Complex{sb};
  const auto a_branch = id - sz * Complex{cb} - sx * Complex{sb};
  const auto down = sz * Complex{sb} - sx * Complex{cb} - sy * kI;
  const auto up = sz * Complex{sb} - sx * Complex{cb} + sy * kI;
  const Complex c_minus = std::polar(1.0, -2.0 * cfg.phi) * Complex{input.s_z, -input.s_y};
  const Complex c_plus = std::polar(1.0, 2.0 * cfg.phi) * Complex{input.s_z, input.s_y};

  auto rho = tensor_product(b_branch, rho_d) * Complex{0.25 * (1.0 - input.s_x)};
  rho -= tensor_product(down, rho_d_udag) * (0.25 * c_minus);
  rho -= tensor_product(up, u_rho_d) * (0.25 * c_plus);
  rho += tensor_product(a_branch, u_rho_d_udag) * Complex{0.25 * (1.0 + input.s_x)};
  return DensityOperator(rho);
}

double port_a_normalizer(const BlochVector& input, double beta) {
  const double denom = 1.0 + input.s_x * std::cos(beta);
  if (std::abs(denom) < kDegenerateTol) {
    throw DegenerateConfiguration(
        "degenerate configuration: 1 + S_x cos(beta) = 0 (S_x = " + std::to_string(input.s_x) +
        ", beta = " + std::to_string(beta) + "); port a is dark and the path weights are undefined");
  }
  return denom;
}

PathWeights path_weights(const BlochVector& input, double beta) {
  input.validate();
  const double denom = port_a_normalizer(input, beta);
  const double c = std::cos(beta / 2.0);
  const double s = std::sin(beta / 2.0);
  PathWeights w;
  w.omega_a = c * c * (1.0 + input.s_x) / denom;
  w.omega_b = s * s * (1.0 - input.s_x) / denom;
  return w;
}

PathWeights path_weights(const BlochVector& input, const MziConfig& cfg) {
  return path_weights(input, cfg.beta);
}

namespace {

ComplexMatrix port_projector(Port port) {
  const auto p = port == Port::A ? ComplexMatrix(2, {0.0, 0.0, 0.0, 1.0}) : ComplexMatrix(2, {1.0, 0.0, 0.0, 0.0});
  return tensor_product(p, ComplexMatrix::identity(2));
}

}  // namespace

double detection_probability(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg, Port port) {
  const auto rho = evolve(input, det, cfg);
  return (port_projector(port) * rho.matrix()).trace().real();
}

double coherence_phase(const BlochVector& input) { return std::atan2(input.s_y, input.s_z); }

double detection_probability_closed_form(const BlochVector& input, const DetectorModel& det,
                                         const MziConfig& cfg, Port port) {
  const double p_a = 0.5 * (1.0 + input.s_x * std::cos(cfg.beta)) +
                     0.5 * det.a_overlap() * input.coherence() * std::sin(cfg.beta) *
                         std::cos(coherence_phase(input) + det.chi() + 2.0 * cfg.phi);
  return port == Port::A ? p_a : 1.0 - p_a;
}

double fringe_visibility(const BlochVector& input, const DetectorModel& det, double beta, Port port) {
  constexpr double kOvershootTol = 1e-10;
  input.validate();
  double denom = 0.0;
  if (port == Port::A) {
    denom = port_a_normalizer(input, beta);
  } else {
    denom = 1.0 - input.s_x * std::cos(beta);
    if (std::abs(denom) < kDegenerateTol) {
      throw DegenerateConfiguration("degenerate configuration: 1 - S_x cos(beta) = 0; port b is dark");
    }
  }
  const double v = det.a_overlap() * std::sin(beta) * input.coherence() / denom;
  if (v > 1.0 + kOvershootTol || v < -kOvershootTol) {
    throw InvariantViolation("fringe visibility " + std::to_string(v) + " outside [0, 1]");
  }
  return std::clamp(v, 0.0, 1.0);
}

DensityOperator weighted_detector_state(const BlochVector& input, const DetectorModel& det, double beta) {
  const auto w = path_weights(input, beta);
  const auto u = det.unitary();
  const auto rho_d = det.initial_state().matrix();
  return DensityOperator(rho_d * Complex{w.omega_b} + u * rho_d * u.adjoint() * Complex{w.omega_a});
}

DensityOperator unconditional_detector_state(const BlochVector& input, const DetectorModel& det,
                                             const MziConfig& cfg) {
  return qmath::partial_trace(evolve(input, det, cfg), qmath::Subsystem::Particle);
}

DensityOperator phase_averaged_port_a_detector_state(const BlochVector& input, const DetectorModel& det,
                                                     double beta) {
  // The interference term is a first harmonic in 2 phi, so eight equally
  // spaced settings over [0, pi) average it out exactly.
  constexpr int kSamples = 8;
  port_a_normalizer(input, beta);
  const auto proj = port_projector(Port::A);
  ComplexMatrix acc(4);
  for (int k = 0; k < kSamples; ++k) {
    const auto cfg = MziConfig::make(beta, std::numbers::pi * k / kSamples);
    const auto rho = evolve(input, det, cfg);
    acc += proj * rho.matrix() * proj;
  }
  auto reduced = qmath::partial_trace(acc, qmath::Subsystem::Particle);
  const Complex total = reduced.trace();
  return DensityOperator(reduced * (1.0 / total));
}

}  // namespace mzi::interferometer

#include "mzi/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "mzi/errors.hpp"

namespace mzi::oracle {

using qmath::Complex;
using qmath::StateVector;

namespace {

constexpr double kPi = std::numbers::pi;

// Golden-section search for the maximum of f on [lo, hi].
double golden_max(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    }
  }
  return std::max({f1, f2, f(0.5 * (lo + hi))});
}

double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

// Roots of a polynomial known to be real-rooted, ascending. The roots of p'
// interlace those of p, so the critical points (found recursively) split
// the real line into intervals holding one root each; a sign change is
// bisected, and an interval without one means the root sits on a critical
// point (a repeated root perturbed by rounding).
std::vector<double> real_roots(const std::vector<double>& c) {
  const int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {-c[0] / c[1]};
  double bound = 0.0;
  for (int i = 0; i < n; ++i) bound = std::max(bound, std::abs(c[i] / c[n]));
  std::vector<double> edges = {-(1.0 + bound)};
  const auto crit = real_roots(derivative(c));
  edges.insert(edges.end(), crit.begin(), crit.end());
  edges.push_back(1.0 + bound);

  std::vector<double> roots;
  for (int k = 0; k < n; ++k) {
    double lo = edges[k];
    double hi = edges[k + 1];
    double p_lo = poly_eval(c, lo);
    const double p_hi = poly_eval(c, hi);
    if (p_lo == 0.0 || p_hi == 0.0 || (p_lo > 0.0) == (p_hi > 0.0)) {
      roots.push_back(std::abs(p_lo) <= std::abs(p_hi) ? lo : hi);
      continue;
    }
    for (int iter = 0; iter < 200 && hi - lo > 0.0; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      const double p_mid = poly_eval(c, mid);
      if (p_mid == 0.0) {
        lo = hi = mid;
        break;
      }
      if ((p_mid > 0.0) == (p_lo > 0.0)) {
        lo = mid;
        p_lo = p_mid;
      } else {
        hi = mid;
      }
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

void check_hermitian(const ComplexMatrix& m) {
  if (const double defect = m.hermiticity_defect(); defect > 1e-10) {
    throw InvalidInput("eigen_by_charpoly: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
}

}  // namespace

void GridSpec::validate() const {
  if (theta_steps < 8 || phi_steps < 8 || phi_scan_steps < 8) {
    throw InvalidInput("grid step counts must be at least 8");
  }
}

// ---------------------------------------------------------------------------
// Evolution by explicit operator chain

namespace {

// rho_Q (x) |r><r| before the interferometer.
ComplexMatrix input_state(const BlochVector& input, const DetectorModel& det) {
  ComplexMatrix rho_q = ComplexMatrix::identity(2);
  rho_q += qmath::pauli_x() * Complex{input.s_x};
  rho_q += qmath::pauli_y() * Complex{input.s_y};
  rho_q += qmath::pauli_z() * Complex{input.s_z};
  rho_q *= 0.5;
  return qmath::tensor_product(rho_q, qmath::projector(det.ready_state()));
}

}  // namespace

ComplexMatrix evolve_by_chain_raw(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg) {
  const auto id2 = ComplexMatrix::identity(2);
  const auto bs1 = qmath::tensor_product(interferometer::bs_unitary(kPi / 2.0), id2);
  const auto ps = qmath::tensor_product(interferometer::phase_unitary(cfg.phi), id2);
  const auto mark = interferometer::marking_operator(det);
  const auto bs2 = qmath::tensor_product(interferometer::bs_unitary(cfg.beta), id2);

  const auto chain = bs2 * mark * ps * bs1;
  return chain * input_state(input, det) * chain.adjoint();
}

DensityOperator evolve_by_chain(const BlochVector& input, const DetectorModel& det, const MziConfig& cfg) {
  input.validate();
  return DensityOperator(evolve_by_chain_raw(input, det, cfg));
}

// ---------------------------------------------------------------------------
// Phase scan

double visibility_by_scan(const BlochVector& input, const DetectorModel& det, double beta, const GridSpec& spec,
                          interferometer::Port port) {
  spec.validate();
  input.validate();
  const int port_index = port == interferometer::Port::A ? 1 : 0;
  // Same operator chain as evolve_by_chain, with the phase-independent
  // factors multiplied once outside the scan.
  const auto id2 = ComplexMatrix::identity(2);
  const auto bs1 = qmath::tensor_product(interferometer::bs_unitary(kPi / 2.0), id2);
  const auto after_bs1 = bs1 * input_state(input, det) * bs1.adjoint();
  const auto outer_ops =
      qmath::tensor_product(interferometer::bs_unitary(beta), id2) * interferometer::marking_operator(det);
  auto click = [&](double phi) {
    const auto ops = outer_ops * qmath::tensor_product(interferometer::phase_unitary(phi), id2);
    const auto rho = ops * after_bs1 * ops.adjoint();
    return (rho(2 * port_index, 2 * port_index) + rho(2 * port_index + 1, 2 * port_index + 1)).real();
  };

  const int n = spec.phi_scan_steps;
  const double step = 2.0 * kPi / n;
  int i_max = 0;
  int i_min = 0;
  double p_max = -std::numeric_limits<double>::infinity();
  double p_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double p = click(step * i);
    if (p > p_max) {
      p_max = p;
      i_max = i;
    }
    if (p < p_min) {
      p_min = p;
      i_min = i;
    }
  }
  constexpr double kPhiTol = 1e-10;
  p_max = std::max(p_max, golden_max(click, step * (i_max - 1), step * (i_max + 1), kPhiTol));
  p_min = std::min(
      p_min, -golden_max([&](double phi) { return -click(phi); }, step * (i_min - 1), step * (i_min + 1), kPhiTol));

  if (p_max + p_min < 1e-14) throw UndefinedVisibility("output port is dark: visibility undefined");
  return (p_max - p_min) / (p_max + p_min);
}

// ---------------------------------------------------------------------------
// Measurement-basis grid search

MeasurementBasis basis_at(double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Complex m_a[] = {c, std::polar(s, phi)};
  const Complex m_b[] = {-std::polar(s, -phi), c};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  // gamma and the normalizers only describe minimum-error-form bases.
  return MeasurementBasis{StateVector::normalized(m_a), StateVector::normalized(m_b), nan, nan, nan};
}

GridSearchResult cc_by_grid_search(const JointOutputState& state, const GridSpec& spec) {
  spec.validate();
  auto objective = [&](double theta, double phi) {
    const auto b = basis_at(theta, phi);
    return correlations::measured_information(state.rho, b.m_a, b.m_b);
  };

  GridSearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i <= spec.theta_steps; ++i) {
    const double theta = kPi * i / spec.theta_steps;
    for (int j = 0; j < spec.phi_steps; ++j) {
      const double phi = 2.0 * kPi * j / spec.phi_steps;
      const double v = objective(theta, phi);
      if (v > best.value) {
        best.value = v;
        best.theta = theta;
        best.phi = phi;
      }
    }
  }

  constexpr double kFinalStep = 1e-5;
  double d_theta = kPi / spec.theta_steps;
  double d_phi = 2.0 * kPi / spec.phi_steps;
  while (d_theta >= kFinalStep || d_phi >= kFinalStep) {
    bool moved = false;
    const double candidates[4][2] = {{best.theta - d_theta, best.phi},
                                     {best.theta + d_theta, best.phi},
                                     {best.theta, best.phi - d_phi},
                                     {best.theta, best.phi + d_phi}};
    for (const auto& cand : candidates) {
      const double v = objective(cand[0], cand[1]);
      if (v > best.value) {
        best.value = v;
        best.theta = cand[0];
        best.phi = cand[1];
        moved = true;
      }
    }
    if (!moved) {
      d_theta *= 0.5;
      d_phi *= 0.5;
    }
  }
  best.best_basis = basis_at(best.theta, best.phi);
  return best;
}

// ---------------------------------------------------------------------------
// Characteristic polynomial

std::vector<double> characteristic_polynomial(const ComplexMatrix& m) {
  check_hermitian(m);
  const int n = m.dim();
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  ComplexMatrix mk(n);  // M_0 = 0
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + ComplexMatrix::identity(n) * Complex{c[n - k + 1]};
    c[n - k] = -(m * mk).trace().real() / k;
  }
  return c;
}

std::vector<double> eigen_by_charpoly(const ComplexMatrix& m) {
  check_hermitian(m);
  if (m.dim() == 2) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return {0.5 * (a + d) - half_gap, 0.5 * (a + d) + half_gap};
  }

  return real_roots(characteristic_polynomial(m));
}

}  // namespace mzi::oracle

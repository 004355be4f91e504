#include "mzi/cli/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>

#include "json.hpp"
#include "mzi/cli/table.hpp"
#include "mzi/correlations.hpp"
#include "mzi/oracle.hpp"

namespace mzi::cli {

namespace {

using correlations::build_mixed_output;
using correlations::build_pure_output;
using interferometer::BlochVector;
using interferometer::DetectorModel;
using interferometer::MziConfig;

constexpr double kPi = std::numbers::pi;

struct Sizes {
  long random_points;
  long scan_points;
  int cube;
  long grid_search_points;
  double argmax_step;
  int a_grid;
};

Sizes sizes_for(GridDensity d) {
  switch (d) {
    case GridDensity::Coarse:
      return {500, 50, 15, 8, 1e-2, 101};
    case GridDensity::Default:
      return {10000, 300, 50, 40, 1e-3, 1001};
    case GridDensity::Fine:
      return {50000, 1000, 80, 200, 1e-4, 10001};
  }
  return {};
}

struct Point {
  BlochVector input;
  double beta;
  double a_overlap;
  double chi;
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

  BlochVector bloch(bool pure) {
    std::normal_distribution<double> n(0.0, 1.0);
    const double x = n(rng_);
    const double y = n(rng_);
    const double z = n(rng_);
    const double r = (pure ? 1.0 : std::cbrt(uniform(0.0, 1.0))) / std::sqrt(x * x + y * y + z * z);
    return {r * x, r * y, r * z};
  }

  qmath::ComplexMatrix hermitian4() {
    std::normal_distribution<double> n(0.0, 1.0);
    qmath::ComplexMatrix m(4);
    for (int r = 0; r < 4; ++r) {
      m(r, r) = n(rng_);
      for (int c = r + 1; c < 4; ++c) {
        m(r, c) = qmath::Complex{n(rng_), n(rng_)};
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

  // Keeps 1 + S_x cos(beta) away from zero.
  Point point(bool pure = false) {
    for (;;) {
      Point p{bloch(pure), uniform(0.0, kPi), uniform(0.0, 1.0), uniform(-kPi, kPi)};
      if (1.0 + p.input.s_x * std::cos(p.beta) > 1e-6) return p;
    }
  }

 private:
  std::mt19937_64 rng_;
};

BlochVector pure_with_sx(double s_x) { return {s_x, 0.0, std::sqrt(std::max(0.0, 1.0 - s_x * s_x))}; }

double j1_at(const BlochVector& in, double a, double beta) {
  return correlations::classical_correlation_pure(build_pure_output(in, DetectorModel(a), beta));
}

double j2_at(const BlochVector& in, double a, double beta) {
  return correlations::classical_correlation_mixed(build_mixed_output(in, DetectorModel(a), beta));
}

class Collector {
 public:
  void add(std::string name, long n, double dev, double tol, std::string note = {}) {
    const auto status = std::isfinite(dev) && dev <= tol ? CheckStatus::Pass : CheckStatus::Fail;
    report.checks.push_back({std::move(name), n, dev, tol, status, std::move(note)});
  }
  void info(std::string name, long n, double value, std::string note) {
    report.checks.push_back({std::move(name), n, value, 0.0, CheckStatus::Info, std::move(note)});
  }

  VerifyReport report;
};

void oracle_checks(Collector& c, const Sizes& s) {
  {
    Sampler rng(1);
    const long n = s.random_points / 10;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      const auto cfg = MziConfig::make(p.beta, rng.uniform(0.0, 2 * kPi));
      const auto closed = interferometer::evolve(p.input, det, cfg);
      dev = std::max(dev, closed.matrix().max_abs_diff(oracle::evolve_by_chain_raw(p.input, det, cfg)));
    }
    c.add("evolution_vs_operator_chain", n, dev, 1e-10);
  }
  {
    Sampler rng(2);
    const long n = s.random_points / 10;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      const auto cfg = MziConfig::make(p.beta, rng.uniform(0.0, 2 * kPi));
      dev = std::max(dev, std::abs(interferometer::detection_probability_closed_form(p.input, det, cfg) -
                                   interferometer::detection_probability(p.input, det, cfg)));
    }
    c.add("click_probability_closed_form", n, dev, 1e-12);
  }
  {
    Sampler rng(3);
    double dev = 0.0;
    for (long i = 0; i < s.scan_points; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      dev = std::max(dev, std::abs(interferometer::fringe_visibility(p.input, det, p.beta) -
                                   oracle::visibility_by_scan(p.input, det, p.beta)));
    }
    c.add("visibility_vs_phase_scan", s.scan_points, dev, 1e-6);
  }
  {
    long n = 0;
    double dev = 0.0;
    for (double a : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
      for (double sx : {-0.9, -0.5, 0.0, 0.3, 0.8}) {
        const double beta = std::acos(-sx);
        dev = std::max(dev, std::abs(interferometer::fringe_visibility(pure_with_sx(sx), DetectorModel(a), beta) - a));
        ++n;
      }
    }
    c.add("visibility_equals_overlap_at_optimum", n, dev, 1e-9);
  }
  {
    // Generic spectra: the polynomial roots are well conditioned.
    Sampler rng(4);
    const long n = s.random_points / 20;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const auto m = rng.hermitian4();
      const auto jacobi = qmath::hermitian_eigen(m).values;
      const auto roots = oracle::eigen_by_charpoly(m);
      for (int k = 0; k < 4; ++k) dev = std::max(dev, std::abs(jacobi[k] - roots[k]));
    }
    c.add("eigenvalues_jacobi_vs_charpoly", n, dev, 1e-8);
  }
  {
    // Output states have repeated zero eigenvalues, so the Jacobi values are
    // checked as roots of the characteristic polynomial instead.
    Sampler rng(11);
    const long n = s.random_points / 20;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      for (const auto& st : {build_mixed_output(p.input, det, p.beta), build_pure_output(p.input, det, p.beta)}) {
        const auto coeffs = oracle::characteristic_polynomial(st.rho.matrix());
        for (double lambda : qmath::hermitian_eigen(st.rho.matrix()).values) {
          double residual = 0.0;
          for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) residual = residual * lambda + *it;
          dev = std::max(dev, std::abs(residual));
        }
      }
    }
    c.add("output_spectrum_charpoly_residual", 2 * n, dev, 1e-14);
  }
}

void correlation_checks(Collector& c, const Sizes& s) {
  {
    const int n = s.cube;
    long count = 0;
    double dev = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double sx = -1.0 + 2.0 * i / (n - 1);
        const double beta = kPi * j / (n - 1);
        if (std::abs(1.0 + sx * std::cos(beta)) < 1e-12) continue;
        for (int k = 0; k < n; ++k) {
          const auto st = build_pure_output(pure_with_sx(sx), DetectorModel(static_cast<double>(k) / (n - 1)), beta);
          const double s_q = qmath::von_neumann_entropy(qmath::partial_trace(st.rho, qmath::Subsystem::Detector));
          dev = std::max(dev, std::abs(correlations::classical_correlation_pure(st) - s_q));
          ++count;
        }
      }
    }
    c.add("j1_closed_form_vs_particle_entropy", count, dev, 1e-10);
  }
  {
    Sampler rng(5);
    const long n = s.random_points / 10;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const double wa = rng.uniform(0.01, 0.99);
      const DetectorModel det(rng.uniform(0.01, 0.99), rng.uniform(-kPi, kPi));
      const interferometer::PathWeights w{wa, 1.0 - wa};
      const auto eig = correlations::min_error_basis(w, det);
      const auto expl = correlations::min_error_basis_explicit(w, det);
      dev = std::max({dev, qmath::phase_insensitive_distance(eig.m_a, expl.m_a),
                      qmath::phase_insensitive_distance(eig.m_b, expl.m_b)});
    }
    c.add("min_error_basis_eigen_vs_explicit", n, dev, 1e-9);
  }
  {
    Sampler rng(6);
    const long n = s.random_points / 10;
    double dev = 0.0;
    for (long i = 0; i < n; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      const auto st = build_mixed_output(p.input, det, p.beta);
      const auto basis = correlations::basis_from_angle(rng.uniform(0.0, 2 * kPi), det);
      dev = std::max(dev, std::abs(correlations::classical_correlation_mixed(st, basis) -
                                   correlations::measured_information(st.rho, basis.m_a, basis.m_b)));
    }
    c.add("j2_closed_form_vs_direct", n, dev, 1e-9);
  }
  {
    Sampler rng(7);
    double dev = 0.0;
    for (long i = 0; i < s.grid_search_points; ++i) {
      const auto p = rng.point();
      const auto st = build_mixed_output(p.input, DetectorModel(p.a_overlap, p.chi), p.beta);
      dev = std::max(dev, std::abs(correlations::classical_correlation_mixed(st) - oracle::cc_by_grid_search(st).value));
    }
    c.add("j2_min_error_vs_grid_search", s.grid_search_points, dev, 1e-4);
  }
  {
    Sampler rng(8);
    double d1 = 0.0;
    double i2 = 0.0;
    double d2 = 0.0;
    double order = -1.0;
    for (long i = 0; i < s.random_points; ++i) {
      const auto p = rng.point();
      const DetectorModel det(p.a_overlap, p.chi);
      const auto pure = build_pure_output(p.input, det, p.beta);
      const auto mixed = build_mixed_output(p.input, det, p.beta);
      const double j1 = correlations::classical_correlation_pure(pure);
      const double j2 = correlations::classical_correlation_mixed(mixed);
      d1 = std::max(d1, std::abs(correlations::quantum_discord(pure) - j1));
      i2 = std::max(i2, std::abs(correlations::mutual_information(mixed) - j1));
      d2 = std::max(d2, std::abs(correlations::quantum_discord(mixed) - (j1 - j2)));
      order = std::max(order, j2 - j1);
    }
    c.add("identity_discord_pure_equals_j1", s.random_points, d1, 1e-10);
    c.add("identity_mutual_info_mixed_equals_j1", s.random_points, i2, 1e-9);
    c.add("identity_discord_mixed_equals_j1_minus_j2", s.random_points, d2, 1e-9);
    c.add("ordering_j1_ge_j2", s.random_points, std::max(0.0, order), 1e-9, "max(J2 - J1)");
  }
}

void complementarity_checks(Collector& c, const Sizes& s) {
  {
    const int n = s.cube;
    long count = 0;
    double j1v = -1.0;
    double j2v = -1.0;
    double d2v = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double sx = -1.0 + 2.0 * i / (n - 1);
        const double beta = kPi * j / (n - 1);
        if (std::abs(1.0 + sx * std::cos(beta)) < 1e-12) continue;
        for (int k = 0; k < n; ++k) {
          const DetectorModel det(static_cast<double>(k) / (n - 1));
          const auto in = pure_with_sx(sx);
          const double v = interferometer::fringe_visibility(in, det, beta);
          const double j1 = correlations::classical_correlation_pure(build_pure_output(in, det, beta));
          const auto mixed = build_mixed_output(in, det, beta);
          const double j2 = correlations::classical_correlation_mixed(mixed);
          const double d2 = correlations::quantum_discord(mixed);
          j1v = std::max(j1v, j1 * j1 + v * v - 1.0);
          j2v = std::max(j2v, j2 * j2 + v * v - 1.0);
          d2v = std::max(d2v, d2 * d2 + v * v);
          ++count;
        }
      }
    }
    c.add("complementarity_j1_sq_plus_v_sq", count, std::max(0.0, j1v), 1e-9, "max(J1^2 + V^2 - 1)");
    c.add("complementarity_j2_sq_plus_v_sq", count, std::max(0.0, j2v), 1e-9, "max(J2^2 + V^2 - 1)");
    c.info("discord_mixed_sq_plus_v_sq", count, d2v, "max(D2^2 + V^2); no bound asserted");
  }
  {
    long n = 0;
    double dev = 0.0;
    for (double sx : {-0.8, -0.5, 0.0, 0.5, 0.8}) {
      const double beta = std::acos(-sx);
      const auto in = pure_with_sx(sx);
      const auto visible = correlations::make_report(build_pure_output(in, DetectorModel(1.0), beta));
      dev = std::max(dev, std::abs(visible.j_squared_plus_v_squared - 1.0));
      for (auto kind : {correlations::StateKind::Pure, correlations::StateKind::Mixed}) {
        const auto st = kind == correlations::StateKind::Pure ? build_pure_output(in, DetectorModel(0.0), beta)
                                                              : build_mixed_output(in, DetectorModel(0.0), beta);
        dev = std::max(dev, std::abs(correlations::make_report(st).j_squared_plus_v_squared - 1.0));
      }
      n += 3;
    }
    c.add("complementarity_saturation_cases", n, dev, 1e-9, "|J^2 + V^2 - 1| at A = 1 and A = 0");
  }
  {
    long n = 0;
    double dev = 0.0;
    for (int k = 0; k < 20; ++k) {
      const double a = k / 19.0;
      for (double sx : {-0.7, 0.0, 0.5}) {
        dev = std::max(dev, std::abs(j1_at(pure_with_sx(sx), a, std::acos(-sx)) - correlations::max_classical_correlation(a)));
        ++n;
      }
    }
    c.add("max_j1_at_optimal_splitter", n, dev, 1e-9);
  }
  {
    double excess = -1.0;
    double ends = 0.0;
    for (int k = 0; k < s.a_grid; ++k) {
      const double a = static_cast<double>(k) / (s.a_grid - 1);
      const auto in = pure_with_sx(0.0);
      const double j = j1_at(in, a, kPi / 2);
      const double v = interferometer::fringe_visibility(in, DetectorModel(a), kPi / 2);
      excess = std::max(excess, j * j + v * v - 1.0);
      if (k == 0 || k == s.a_grid - 1) ends = std::max(ends, std::abs(j * j + v * v - 1.0));
    }
    c.add("max_j1_sq_plus_max_v_sq_bound", s.a_grid, std::max(0.0, excess), 1e-9);
    c.add("max_j1_sq_plus_max_v_sq_endpoints", 2, ends, 1e-9);
  }
}

void shape_checks(Collector& c, const Sizes& s) {
  {
    long n = 0;
    double rise = 0.0;
    for (double sx : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
      for (double beta : {0.4, 1.2, 2.0, 2.8}) {
        const auto in = pure_with_sx(sx);
        double prev1 = j1_at(in, 0.0, beta);
        double prev2 = j2_at(in, 0.0, beta);
        for (int k = 1; k < s.a_grid / 2; ++k) {
          const double a = static_cast<double>(k) / (s.a_grid / 2 - 1);
          const double j1 = j1_at(in, a, beta);
          const double j2 = j2_at(in, a, beta);
          rise = std::max({rise, j1 - prev1, j2 - prev2});
          prev1 = j1;
          prev2 = j2;
          n += 2;
        }
      }
    }
    c.add("j1_j2_non_increasing_in_overlap", n, rise, 1e-9, "max J(A_k+1) - J(A_k)");
  }
  const double a = 1.0 / 3.0;
  {
    const int steps = static_cast<int>(std::lround(2.0 / s.argmax_step));
    double dev = 0.0;
    for (const auto& [beta, expected] : {std::pair{kPi / 3, -0.5}, std::pair{kPi / 2, 0.0}, std::pair{2 * kPi / 3, 0.5}}) {
      double best = -1.0;
      double where = 0.0;
      for (int i = 0; i <= steps; ++i) {
        const double sx = -1.0 + 2.0 * i / steps;
        const double j = j1_at(pure_with_sx(sx), a, beta);
        if (j > best) {
          best = j;
          where = sx;
        }
      }
      dev = std::max(dev, std::abs(where - expected));
    }
    c.add("argmax_j1_over_s_x", 3L * (steps + 1), dev, s.argmax_step * (1 + 1e-9));
  }
  {
    const int steps = static_cast<int>(std::lround(kPi / s.argmax_step));
    const double step = kPi / steps;
    double dev = 0.0;
    const double r3 = std::sqrt(3.0) / 2.0;
    for (const auto& [sx, expected] : {std::pair{-r3, kPi / 6}, std::pair{0.0, kPi / 2}, std::pair{r3, 5 * kPi / 6}}) {
      double best = -1.0;
      double where = 0.0;
      for (int i = 0; i <= steps; ++i) {
        const double beta = kPi * i / steps;
        const double j = j1_at(pure_with_sx(sx), a, beta);
        if (j > best) {
          best = j;
          where = beta;
        }
      }
      dev = std::max(dev, std::abs(where - expected));
    }
    c.add("argmax_j1_over_beta", 3L * (steps + 1), dev, step * (1 + 1e-9));
  }
  {
    Sampler rng(9);
    long n = 0;
    double dev = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double aa = rng.uniform(0.0, 1.0);
      const double sx = rng.uniform(-0.99, 0.99);
      const double beta = rng.uniform(0.01, kPi - 0.01);
      for (const auto& [in, b] : {std::pair{pure_with_sx(sx), 0.0}, std::pair{pure_with_sx(sx), kPi},
                                  std::pair{pure_with_sx(1.0), beta}, std::pair{pure_with_sx(-1.0), beta}}) {
        dev = std::max({dev, std::abs(j1_at(in, aa, b)), std::abs(j2_at(in, aa, b))});
        n += 2;
      }
    }
    c.add("zero_correlation_at_edges", n, dev, 1e-10);
  }
  {
    int accepted = 0;
    for (const auto& [sx, beta] : {std::pair{1.0, kPi}, std::pair{-1.0, 0.0}}) {
      try {
        interferometer::path_weights(pure_with_sx(sx), beta);
        ++accepted;
      } catch (const DegenerateConfiguration&) {
      }
    }
    c.add("degenerate_corners_rejected", 2, accepted, 0.0, "corners accepted");
  }
}

void detector_state_checks(Collector& c) {
  Sampler rng(10);
  const long n = 100;
  double avg = 0.0;
  double beta_dep = 0.0;
  for (long i = 0; i < n; ++i) {
    const auto p = rng.point();
    const DetectorModel det(p.a_overlap, p.chi);
    const auto weighted = interferometer::weighted_detector_state(p.input, det, p.beta);
    avg = std::max(avg, weighted.matrix().max_abs_diff(
                            interferometer::phase_averaged_port_a_detector_state(p.input, det, p.beta).matrix()));
    const auto unconditional =
        interferometer::unconditional_detector_state(p.input, det, MziConfig::make(p.beta, 0.0));
    beta_dep = std::max(beta_dep, weighted.matrix().max_abs_diff(unconditional.matrix()));
  }
  c.add("weighted_detector_state_is_phase_averaged_port_a", n, avg, 1e-12);
  c.info("weighted_vs_unconditional_detector_state", n, beta_dep,
         "beta-dependent weights differ from the plain partial trace");
}

}  // namespace

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Pass:
      return "PASS";
    case CheckStatus::Fail:
      return "FAIL";
    case CheckStatus::Info:
      return "INFO";
  }
  return "?";
}

bool VerifyReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.status == CheckStatus::Fail; });
}

VerifyReport run_verify(GridDensity density) {
  const auto sizes = sizes_for(density);
  Collector c;
  const std::function<void()> suites[] = {
      [&] { oracle_checks(c, sizes); },        [&] { correlation_checks(c, sizes); },
      [&] { complementarity_checks(c, sizes); }, [&] { shape_checks(c, sizes); },
      [&] { detector_state_checks(c); }};
  for (const auto& suite : suites) {
    try {
      suite();
    } catch (const std::exception& e) {
      c.report.checks.push_back({"suite_error", 0, 0.0, 0.0, CheckStatus::Fail, e.what()});
    }
  }
  return c.report;
}

void write_verify_text(std::ostream& out, const VerifyReport& report) {
  char line[256];
  std::snprintf(line, sizeof line, "%-50s %10s %18s %18s  %s\n", "check", "grid", "max_deviation", "tolerance",
                "status");
  out << line;
  for (const auto& r : report.checks) {
    const auto tol = r.status == CheckStatus::Info ? std::string("-") : format_number(r.tolerance);
    std::snprintf(line, sizeof line, "%-50s %10ld %18s %18s  %s", r.name.c_str(), r.grid_size,
                  format_number(r.max_deviation).c_str(), tol.c_str(), to_string(r.status));
    out << line;
    if (!r.note.empty()) out << "  (" << r.note << ")";
    out << '\n';
  }
  out << (report.passed() ? "all checks passed" : "verification FAILED") << '\n';
}

void write_verify_csv(std::ostream& out, const VerifyReport& report) {
  out << "check,grid,max_deviation,tolerance,status,note\n";
  for (const auto& r : report.checks) {
    out << csv_field(r.name) << ',' << r.grid_size << ',' << format_number(r.max_deviation) << ','
        << (r.status == CheckStatus::Info ? "" : format_number(r.tolerance)) << ',' << to_string(r.status) << ','
        << csv_field(r.note) << '\n';
  }
}

void write_verify_json(std::ostream& out, const VerifyReport& report) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : report.checks) {
    nlohmann::ordered_json obj;
    obj["check"] = r.name;
    obj["grid"] = r.grid_size;
    obj["max_deviation"] = rounded_number(r.max_deviation);
    obj["tolerance"] = r.status == CheckStatus::Info ? nlohmann::ordered_json(nullptr)
                                                     : nlohmann::ordered_json(rounded_number(r.tolerance));
    obj["status"] = to_string(r.status);
    obj["note"] = r.note;
    arr.push_back(obj);
  }
  out << arr.dump(2) << '\n';
}

}  // namespace mzi::cli

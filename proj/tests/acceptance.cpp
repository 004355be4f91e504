// Acceptance run: one PASS/FAIL line per criterion with the measured
// deviation, its tolerance and the wall time against the budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "mzi/correlations.hpp"
#include "mzi/errors.hpp"
#include "mzi/interferometer.hpp"
#include "mzi/oracle.hpp"

namespace {

using mzi::correlations::build_mixed_output;
using mzi::correlations::build_pure_output;
using mzi::interferometer::BlochVector;
using mzi::interferometer::DetectorModel;

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool ok = true;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
  BlochVector bloch(bool pure) {
    std::normal_distribution<double> n;
    const double x = n(gen_);
    const double y = n(gen_);
    const double z = n(gen_);
    const double r = (pure ? 1.0 : std::cbrt(uniform(0.0, 1.0))) / std::sqrt(x * x + y * y + z * z);
    return {r * x, r * y, r * z};
  }

 private:
  std::mt19937_64 gen_;
};

struct Sample {
  BlochVector input;
  double beta;
  DetectorModel det;
};

Sample sample(Rng& rng, bool pure = false) {
  for (;;) {
    const auto in = rng.bloch(pure);
    const double beta = rng.uniform(0.0, kPi);
    const double a = rng.uniform(0.0, 1.0);
    const double chi = rng.uniform(-kPi, kPi);
    if (1.0 + in.s_x * std::cos(beta) > 1e-6) return {in, beta, DetectorModel(a, chi)};
  }
}

BlochVector pure_sx(double sx) { return {sx, 0.0, std::sqrt(std::max(0.0, 1.0 - sx * sx))}; }

double j1(const BlochVector& in, const DetectorModel& det, double beta) {
  return mzi::correlations::classical_correlation_pure(build_pure_output(in, det, beta));
}

double j2(const BlochVector& in, const DetectorModel& det, double beta) {
  return mzi::correlations::classical_correlation_mixed(build_mixed_output(in, det, beta));
}

double h2(double p) {
  double s = 0.0;
  for (double q : {p, 1.0 - p})
    if (q > 0.0) s -= q * std::log2(q);
  return s;
}

Outcome within(double deviation, double tolerance, std::string detail = {}) {
  return {deviation <= tolerance, deviation, tolerance, std::move(detail)};
}

Outcome c1_visibility_at_optimum() {
  Rng rng(101);
  double dev = 0.0;
  for (double a : {0.0, 0.25, 1.0 / 3.0, 0.5, 0.75, 1.0}) {
    for (int t = 0; t < 50; ++t) {
      auto in = rng.bloch(true);
      if (std::abs(in.s_x) > 0.999) continue;
      const double beta = std::acos(-in.s_x);
      dev = std::max(dev, std::abs(mzi::interferometer::fringe_visibility(in, DetectorModel(a, rng.uniform(-kPi, kPi)), beta) - a));
    }
  }
  return within(dev, 1e-9);
}

Outcome c2_visibility_vs_scan() {
  Rng rng(202);
  double dev = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const auto s = sample(rng);
    dev = std::max(dev, std::abs(mzi::interferometer::fringe_visibility(s.input, s.det, s.beta) -
                                 mzi::oracle::visibility_by_scan(s.input, s.det, s.beta)));
  }
  return within(dev, 1e-6, "1000 random points");
}

Outcome c3_j1_equals_particle_entropy() {
  const int n = 50;
  double dev = 0.0;
  long count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double sx = -1.0 + 2.0 * i / (n - 1);
      const double beta = kPi * j / (n - 1);
      if (std::abs(1.0 + sx * std::cos(beta)) < 1e-12) continue;
      for (int k = 0; k < n; ++k) {
        const auto st = build_pure_output(pure_sx(sx), DetectorModel(static_cast<double>(k) / (n - 1)), beta);
        const double s_q = mzi::qmath::von_neumann_entropy(mzi::qmath::partial_trace(st.rho, mzi::qmath::Subsystem::Detector));
        dev = std::max(dev, std::abs(mzi::correlations::classical_correlation_pure(st) - s_q));
        ++count;
      }
    }
  }
  return within(dev, 1e-10, std::to_string(count) + " grid points");
}

Outcome c4_j2_vs_grid_search() {
  Rng rng(404);
  double dev = 0.0;
  for (int t = 0; t < 200; ++t) {
    const auto s = sample(rng);
    const auto st = build_mixed_output(s.input, s.det, s.beta);
    dev = std::max(dev, std::abs(mzi::correlations::classical_correlation_mixed(st) - mzi::oracle::cc_by_grid_search(st).value));
  }
  return within(dev, 1e-4, "200 random points");
}

Outcome c5_identities() {
  Rng rng(505);
  double d1 = 0.0;
  double i2 = 0.0;
  double d2 = 0.0;
  for (int t = 0; t < 10000; ++t) {
    const auto s = sample(rng);
    const auto pure = build_pure_output(s.input, s.det, s.beta);
    const auto mixed = build_mixed_output(s.input, s.det, s.beta);
    const double a = mzi::correlations::classical_correlation_pure(pure);
    const double b = mzi::correlations::classical_correlation_mixed(mixed);
    d1 = std::max(d1, std::abs(mzi::correlations::quantum_discord(pure) - a));
    i2 = std::max(i2, std::abs(mzi::correlations::mutual_information(mixed) - a));
    d2 = std::max(d2, std::abs(mzi::correlations::quantum_discord(mixed) - (a - b)));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "D1-J1 %.2e, I2-J1 %.2e, D2-(J1-J2) %.2e", d1, i2, d2);
  return within(std::max({d1, i2, d2}), 1e-9, buf);
}

Outcome c6_ordering_and_complementarity() {
  const int n = 41;
  double worst = -1.0;
  long count = 0;
  auto update = [&](const BlochVector& in, const DetectorModel& det, double beta) {
    const double v = mzi::interferometer::fringe_visibility(in, det, beta);
    const double a = j1(in, det, beta);
    const double b = j2(in, det, beta);
    worst = std::max({worst, b - a, a * a + v * v - 1.0, b * b + v * v - 1.0});
    ++count;
  };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double sx = -1.0 + 2.0 * i / (n - 1);
      const double beta = kPi * j / (n - 1);
      if (std::abs(1.0 + sx * std::cos(beta)) < 1e-12) continue;
      for (int k = 0; k < n; ++k) update(pure_sx(sx), DetectorModel(static_cast<double>(k) / (n - 1)), beta);
    }
  Rng rng(606);
  for (int t = 0; t < 2000; ++t) {
    const auto s = sample(rng);
    update(s.input, s.det, s.beta);
  }
  // Saturation: V = 1 at A = 1 and J = 1 at A = 0, both with cos(beta) = -S_x.
  double sat = 0.0;
  for (double sx : {-0.6, 0.0, 0.45}) {
    const double beta = std::acos(-sx);
    const auto in = pure_sx(sx);
    const double v1 = mzi::interferometer::fringe_visibility(in, DetectorModel(1.0), beta);
    const double a1 = j1(in, DetectorModel(1.0), beta);
    sat = std::max(sat, std::abs(a1 * a1 + v1 * v1 - 1.0));
    for (const auto& jj : {j1(in, DetectorModel(0.0), beta), j2(in, DetectorModel(0.0), beta)}) {
      const double v0 = mzi::interferometer::fringe_visibility(in, DetectorModel(0.0), beta);
      sat = std::max(sat, std::abs(jj * jj + v0 * v0 - 1.0));
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "%ld points, worst excess %.2e, saturation gap %.2e", count, std::max(0.0, worst), sat);
  return {worst <= 1e-9 && sat <= 1e-9, std::max({0.0, worst, sat}), 1e-9, buf};
}

Outcome c7_argmax_locations() {
  const DetectorModel det(1.0 / 3.0);
  double dev = 0.0;
  const int sx_steps = 2000;
  for (const auto& [beta, expected] : {std::pair{kPi / 3, -0.5}, std::pair{kPi / 2, 0.0}, std::pair{2 * kPi / 3, 0.5}}) {
    double best = -1.0;
    double where = 0.0;
    for (int i = 0; i <= sx_steps; ++i) {
      const double sx = -1.0 + 2.0 * i / sx_steps;
      const double v = j1(pure_sx(sx), det, beta);
      if (v > best) {
        best = v;
        where = sx;
      }
    }
    dev = std::max(dev, std::abs(where - expected) / 1e-3);
  }
  const double beta_step = 1e-3;
  const int beta_steps = static_cast<int>(std::floor(kPi / beta_step));
  const double r3 = std::sqrt(3.0) / 2.0;
  for (const auto& [sx, expected] : {std::pair{-r3, kPi / 6}, std::pair{0.0, kPi / 2}, std::pair{r3, 5 * kPi / 6}}) {
    double best = -1.0;
    double where = 0.0;
    for (int i = 0; i <= beta_steps; ++i) {
      const double beta = beta_step * i;
      const double v = j1(pure_sx(sx), det, beta);
      if (v > best) {
        best = v;
        where = beta;
      }
    }
    dev = std::max(dev, std::abs(where - expected) / beta_step);
  }
  return within(dev, 1.0, "deviation in grid steps of 1e-3");
}

Outcome c8_maximum_correlation() {
  double dev = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double a = k / 19.0;
    for (double sx : {-0.8, -0.3, 0.0, 0.5, 0.9}) {
      dev = std::max(dev, std::abs(j1(pure_sx(sx), DetectorModel(a), std::acos(-sx)) - h2((1.0 + a) / 2.0)));
    }
  }
  double excess = -1.0;
  double ends = 0.0;
  const int n = 1000;
  for (int k = 0; k < n; ++k) {
    const double a = static_cast<double>(k) / (n - 1);
    const auto in = pure_sx(0.0);
    const double jm = j1(in, DetectorModel(a), kPi / 2);
    const double vm = mzi::interferometer::fringe_visibility(in, DetectorModel(a), kPi / 2);
    const double sum = jm * jm + vm * vm;
    excess = std::max(excess, sum - 1.0);
    if (k == 0 || k == n - 1) ends = std::max(ends, std::abs(sum - 1.0));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "J1-h %.2e, bound excess %.2e, endpoint gap %.2e", dev, std::max(0.0, excess), ends);
  return {dev <= 1e-9 && excess <= 1e-9 && ends <= 1e-9, std::max({dev, excess, ends}), 1e-9, buf};
}

Outcome c9_monotone_in_overlap() {
  const int n = 500;
  double rise = 0.0;
  Rng rng(909);
  for (int t = 0; t < 20; ++t) {
    const auto in = t < 10 ? pure_sx(rng.uniform(-0.95, 0.95)) : rng.bloch(false);
    double beta = rng.uniform(0.05, kPi - 0.05);
    if (1.0 + in.s_x * std::cos(beta) < 1e-3) beta = kPi / 2;
    const double chi = rng.uniform(-kPi, kPi);
    double p1 = j1(in, DetectorModel(0.0, chi), beta);
    double p2 = j2(in, DetectorModel(0.0, chi), beta);
    for (int k = 1; k < n; ++k) {
      const DetectorModel det(static_cast<double>(k) / (n - 1), chi);
      const double a = j1(in, det, beta);
      const double b = j2(in, det, beta);
      rise = std::max({rise, a - p1, b - p2});
      p1 = a;
      p2 = b;
    }
  }
  return within(rise, 1e-9, "largest step increase");
}

Outcome c10_edges_and_corners() {
  Rng rng(1010);
  double dev = 0.0;
  for (int t = 0; t < 200; ++t) {
    const DetectorModel det(rng.uniform(0.0, 1.0), rng.uniform(-kPi, kPi));
    const double sx = rng.uniform(-0.99, 0.99);
    const double beta = rng.uniform(0.01, kPi - 0.01);
    for (const auto& [in, b] : {std::pair{pure_sx(sx), 0.0}, std::pair{pure_sx(sx), kPi},
                                std::pair{rng.bloch(false), 0.0}, std::pair{pure_sx(1.0), beta},
                                std::pair{pure_sx(-1.0), beta}}) {
      dev = std::max({dev, std::abs(j1(in, det, b)), std::abs(j2(in, det, b))});
    }
  }
  int thrown = 0;
  int attempts = 0;
  for (const auto& [sx, beta] : {std::pair{1.0, kPi}, std::pair{-1.0, 0.0}}) {
    const std::function<void()> calls[] = {
        [&] { mzi::interferometer::path_weights(pure_sx(sx), beta); },
        [&] { build_pure_output(pure_sx(sx), DetectorModel(0.5), beta); },
        [&] { build_mixed_output(pure_sx(sx), DetectorModel(0.5), beta); },
        [&] { mzi::interferometer::fringe_visibility(pure_sx(sx), DetectorModel(0.5), beta); }};
    for (const auto& call : calls) {
      ++attempts;
      try {
        call();
      } catch (const mzi::DegenerateConfiguration&) {
        ++thrown;
      }
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "max |J| %.2e, corners thrown %d/%d", dev, thrown, attempts);
  return {dev <= 1e-10 && thrown == attempts, dev, 1e-10, buf};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "visibility equals A at cos(beta) = -S_x", 1.0, c1_visibility_at_optimum},
      {2, "closed-form visibility vs phase-scan oracle", 10.0, c2_visibility_vs_scan},
      {3, "J(rho1) equals S(rho_Q) on a 50^3 grid", 60.0, c3_j1_equals_particle_entropy},
      {4, "J(rho2) minimum-error basis vs grid search", 120.0, c4_j2_vs_grid_search},
      {5, "D1 = J1, I2 = J1, D2 = J1 - J2", 0.0, c5_identities},
      {6, "J1 >= J2 and J^2 + V^2 <= 1 with saturation", 0.0, c6_ordering_and_complementarity},
      {7, "argmax locations at A = 1/3", 0.0, c7_argmax_locations},
      {8, "maximum J1 and J1max^2 + Vmax^2 <= 1", 0.0, c8_maximum_correlation},
      {9, "J1 and J2 non-increasing in A", 0.0, c9_monotone_in_overlap},
      {10, "zero correlation at edges, corners rejected", 0.0, c10_edges_and_corners},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, NAN, 0.0, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.budget_s <= 0.0 || secs < c.budget_s;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    char budget[32] = "-";
    if (c.budget_s > 0.0) std::snprintf(budget, sizeof budget, "%gs", c.budget_s);
    std::printf("%s  C%-2d %-48s dev=%-10.3e tol=%-8.1e time=%.3fs (budget %s)%s%s\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.deviation, o.tolerance, secs, budget, o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "mzi/interferometer.hpp"
#include "mzi/qmath.hpp"

namespace mzi::testing {

using qmath::Complex;
using qmath::ComplexMatrix;

inline constexpr double kPi = std::numbers::pi;

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(rng_); }

  ComplexMatrix hermitian(int dim) {
    ComplexMatrix m(dim);
    for (int r = 0; r < dim; ++r) {
      m(r, r) = normal();
      for (int c = r + 1; c < dim; ++c) {
        m(r, c) = Complex{normal(), normal()};
        m(c, r) = std::conj(m(r, c));
      }
    }
    return m;
  }

  // exp(i H) for a random Hermitian H.
  ComplexMatrix unitary(int dim) {
    const auto eig = qmath::hermitian_eigen(hermitian(dim));
    ComplexMatrix u(dim);
    for (int k = 0; k < dim; ++k) {
      u += qmath::outer(eig.vectors[k], eig.vectors[k]) * std::polar(1.0, eig.values[k]);
    }
    return u;
  }

  // Random full-rank density operator: G G^dagger / tr.
  qmath::DensityOperator density(int dim) {
    ComplexMatrix g(dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) g(r, c) = Complex{normal(), normal()};
    auto m = g * g.adjoint();
    const Complex tr = m.trace();
    m *= 1.0 / tr;
    for (int i = 0; i < dim; ++i) m(i, i) = m(i, i).real();
    return qmath::DensityOperator(m);
  }

  // Uniform direction with radius `radius`.
  interferometer::BlochVector bloch_on_sphere(double radius = 1.0) {
    double x = normal();
    double y = normal();
    double z = normal();
    const double n = std::sqrt(x * x + y * y + z * z);
    return {radius * x / n, radius * y / n, radius * z / n};
  }

  interferometer::BlochVector bloch_in_ball() { return bloch_on_sphere(std::cbrt(uniform(0.0, 1.0))); }

  // Bloch vector, beta and overlap away from the dark-port corners.
  struct Point {
    interferometer::BlochVector input;
    double beta;
    double a_overlap;
    double chi;
  };

  Point valid_point(bool pure = false) {
    for (;;) {
      Point p{pure ? bloch_on_sphere() : bloch_in_ball(), uniform(0.0, kPi), uniform(0.0, 1.0),
              uniform(-kPi, kPi)};
      if (1.0 + p.input.s_x * std::cos(p.beta) > 1e-6) return p;
    }
  }

 private:
  std::mt19937_64 rng_;
};

}  // namespace mzi::testing

#include "mzi/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mzi/errors.hpp"

namespace mzi::qmath {

namespace {

void check_dim(int dim) {
  if (dim != 2 && dim != 4) {
    throw InvalidDimension("dimension must be 2 or 4, got " + std::to_string(dim));
  }
}

void check_same_dim(int a, int b) {
  if (a != b) {
    throw InvalidDimension("dimension mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// ComplexMatrix

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(int dim, std::initializer_list<Complex> entries) : ComplexMatrix(dim) {
  if (entries.size() != static_cast<std::size_t>(dim * dim)) {
    throw InvalidDimension("expected " + std::to_string(dim * dim) + " entries, got " +
                           std::to_string(entries.size()));
  }
  std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(int dim) {
  ComplexMatrix m(dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> diag) {
  ComplexMatrix m(static_cast<int>(diag.size()));
  for (int i = 0; i < m.dim(); ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
  check_same_dim(dim_, other.dim_);
  double worst = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) worst = std::max(worst, std::abs(data_[i] - other.data_[i]));
  return worst;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (int i = 0; i < dim_ * dim_; ++i) sum += std::norm(data_[i]);
  return std::sqrt(sum);
}

double ComplexMatrix::hermiticity_defect() const {
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int c = r; c < dim_; ++c)
      worst = std::max(worst, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return worst;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  check_same_dim(dim_, rhs.dim_);
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] += rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  check_same_dim(dim_, rhs.dim_);
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] -= rhs.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (int i = 0; i < dim_ * dim_; ++i) data_[i] *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
  check_same_dim(lhs.dim(), rhs.dim());
  const int n = lhs.dim();
  ComplexMatrix out(n);
  for (int r = 0; r < n; ++r)
    for (int k = 0; k < n; ++k) {
      const Complex a = lhs(r, k);
      if (a == Complex{}) continue;
      for (int c = 0; c < n; ++c) out(r, c) += a * rhs(k, c);
    }
  return out;
}

// ---------------------------------------------------------------------------
// StateVector

namespace {

std::array<Complex, 4> copy_amplitudes(std::span<const Complex> amplitudes) {
  check_dim(static_cast<int>(amplitudes.size()));
  std::array<Complex, 4> amp{};
  std::copy(amplitudes.begin(), amplitudes.end(), amp.begin());
  return amp;
}

double squared_norm(std::span<const Complex> amplitudes) {
  double n = 0.0;
  for (const auto& a : amplitudes) n += std::norm(a);
  return n;
}

}  // namespace

StateVector::StateVector(std::span<const Complex> amplitudes)
    : dim_(static_cast<int>(amplitudes.size())), amp_(copy_amplitudes(amplitudes)) {
  const double norm = std::sqrt(squared_norm(amplitudes));
  if (std::abs(norm - 1.0) > 1e-12) {
    throw InvariantViolation("state vector norm is " + std::to_string(norm) + ", expected 1");
  }
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::span<const Complex>(amplitudes.begin(), amplitudes.size())) {}

StateVector StateVector::normalized(std::span<const Complex> amplitudes) {
  auto amp = copy_amplitudes(amplitudes);
  const double norm = std::sqrt(squared_norm(amplitudes));
  if (norm == 0.0) throw InvalidInput("cannot normalize the zero vector");
  for (auto& a : amp) a /= norm;
  return StateVector(static_cast<int>(amplitudes.size()), amp);
}

StateVector StateVector::basis(int dim, int index) {
  check_dim(dim);
  if (index < 0 || index >= dim) throw InvalidInput("basis index out of range");
  std::array<Complex, 4> amp{};
  amp[index] = 1.0;
  return StateVector(dim, amp);
}

StateVector StateVector::canonical_phase() const {
  for (int i = 0; i < dim_; ++i) {
    const double mag = std::abs(amp_[i]);
    if (mag > 1e-12) {
      const Complex phase = std::conj(amp_[i]) / mag;
      auto amp = amp_;
      for (int k = 0; k < dim_; ++k) amp[k] *= phase;
      amp[i] = mag;
      return StateVector(dim_, amp);
    }
  }
  return *this;
}

Complex inner(const StateVector& lhs, const StateVector& rhs) {
  check_same_dim(lhs.dim(), rhs.dim());
  Complex s = 0.0;
  for (int i = 0; i < lhs.dim(); ++i) s += std::conj(lhs[i]) * rhs[i];
  return s;
}

ComplexMatrix outer(const StateVector& ket, const StateVector& bra) {
  check_same_dim(ket.dim(), bra.dim());
  ComplexMatrix m(ket.dim());
  for (int r = 0; r < ket.dim(); ++r)
    for (int c = 0; c < ket.dim(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

ComplexMatrix projector(const StateVector& v) { return outer(v, v); }

StateVector apply(const ComplexMatrix& m, const StateVector& v) {
  check_same_dim(m.dim(), v.dim());
  std::array<Complex, 4> out{};
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) out[r] += m(r, c) * v[c];
  return StateVector::normalized(std::span<const Complex>(out.data(), m.dim()));
}

double phase_insensitive_distance(const StateVector& a, const StateVector& b) {
  // The optimal phase aligns <b|a>.
  const Complex overlap = inner(b, a);
  const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0};
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - phase * b[i]));
  return worst;
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(const ComplexMatrix& m) : matrix_(m) {
  if (const double defect = m.hermiticity_defect(); defect > kHermitianTol) {
    throw InvariantViolation("density operator is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  if (const double tr_err = std::abs(m.trace() - 1.0); tr_err > kTraceTol) {
    throw InvariantViolation("density operator trace deviates from 1 by " + std::to_string(tr_err));
  }
  const auto eig = hermitian_eigen(m);
  if (eig.values.front() < -kNegativeEigenTol) {
    throw InvariantViolation("density operator has negative eigenvalue " + std::to_string(eig.values.front()));
  }
}

DensityOperator DensityOperator::pure(const StateVector& v) { return DensityOperator(projector(v)); }

// ---------------------------------------------------------------------------
// Pauli matrices and composite systems

ComplexMatrix pauli_x() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix pauli_y() { return ComplexMatrix(2, {0.0, -kI, kI, 0.0}); }
ComplexMatrix pauli_z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }

ComplexMatrix tensor_product(const ComplexMatrix& particle, const ComplexMatrix& detector) {
  if (particle.dim() != 2 || detector.dim() != 2) {
    throw InvalidDimension("tensor_product expects two 2x2 factors");
  }
  ComplexMatrix out(4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = particle(i, j) * detector(k, l);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced) {
  if (m.dim() != 4) throw InvalidDimension("partial_trace expects a 4x4 operator");
  ComplexMatrix out(2);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k) {
        if (traced == Subsystem::Detector) {
          out(r, c) += m(2 * r + k, 2 * c + k);
        } else {
          out(r, c) += m(2 * k + r, 2 * k + c);
        }
      }
  return out;
}

DensityOperator partial_trace(const DensityOperator& rho, Subsystem traced) {
  return DensityOperator(partial_trace(rho.matrix(), traced));
}

// ---------------------------------------------------------------------------
// Eigen-decomposition

namespace {

double off_diagonal_norm(const ComplexMatrix& m) {
  double sum = 0.0;
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c)
      if (r != c) sum += std::norm(m(r, c));
  return std::sqrt(sum);
}

// Right-multiplies m by the plane rotation G acting on columns p, q.
void rotate_columns(ComplexMatrix& m, int p, int q, Complex gpp, Complex gpq, Complex gqp, Complex gqq) {
  for (int r = 0; r < m.dim(); ++r) {
    const Complex mp = m(r, p);
    const Complex mq = m(r, q);
    m(r, p) = mp * gpp + mq * gqp;
    m(r, q) = mp * gpq + mq * gqq;
  }
}

// Left-multiplies m by G^dagger acting on rows p, q.
void rotate_rows_adjoint(ComplexMatrix& m, int p, int q, Complex gpp, Complex gpq, Complex gqp, Complex gqq) {
  for (int c = 0; c < m.dim(); ++c) {
    const Complex mp = m(p, c);
    const Complex mq = m(q, c);
    m(p, c) = std::conj(gpp) * mp + std::conj(gqp) * mq;
    m(q, c) = std::conj(gpq) * mp + std::conj(gqq) * mq;
  }
}

}  // namespace

EigenSystem hermitian_eigen(const ComplexMatrix& m) {
  constexpr double kHermitianInputTol = 1e-10;
  constexpr double kOffDiagonalTol = 1e-13;
  constexpr int kMaxSweeps = 100;

  if (const double defect = m.hermiticity_defect(); defect > kHermitianInputTol) {
    throw InvalidInput("hermitian_eigen: matrix is not Hermitian (defect " + std::to_string(defect) + ")");
  }
  const int n = m.dim();

  // Symmetrize so tiny anti-Hermitian noise cannot stall the sweeps.
  ComplexMatrix a = (m + m.adjoint()) * Complex{0.5};
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double tol = kOffDiagonalTol * std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  for (; sweep < kMaxSweeps && off_diagonal_norm(a) >= tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        // Phase e^{i phi} = apq/|apq| reduces the 2x2 block to a real
        // symmetric one; the real Jacobi rotation then zeroes it.
        const Complex phase = apq / mag;
        const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // G = D R with D = diag(1, conj(phase)) on (p, q) and
        // R = [[c, s], [-s, c]].
        const Complex gpp = c;
        const Complex gpq = s;
        const Complex gqp = -s * std::conj(phase);
        const Complex gqq = c * std::conj(phase);
        rotate_columns(a, p, q, gpp, gpq, gqp, gqq);
        rotate_rows_adjoint(a, p, q, gpp, gpq, gqp, gqq);
        rotate_columns(v, p, q, gpp, gpq, gqp, gqq);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  if (off_diagonal_norm(a) >= tol) {
    throw ConvergenceFailure("hermitian_eigen: Jacobi sweeps did not converge");
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenSystem out;
  out.values.reserve(n);
  out.vectors.reserve(n);
  for (int idx : order) {
    out.values.push_back(a(idx, idx).real());
    std::array<Complex, 4> col{};
    for (int r = 0; r < n; ++r) col[r] = v(r, idx);
    out.vectors.push_back(StateVector::normalized(std::span<const Complex>(col.data(), n)));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Entropies

double shannon_entropy(std::span<const double> probabilities) {
  constexpr double kClip = 1e-10;
  double h = 0.0;
  for (double p : probabilities) {
    if (p < -kClip) throw InvariantViolation("negative probability " + std::to_string(p));
    if (p > 0.0) h -= p * std::log2(p);
  }
  return h;
}

double binary_entropy(double p) {
  const double probs[] = {p, 1.0 - p};
  return shannon_entropy(probs);
}

double von_neumann_entropy(const DensityOperator& rho) {
  const auto eig = hermitian_eigen(rho.matrix());
  return shannon_entropy(eig.values);
}

}  // namespace mzi::qmath

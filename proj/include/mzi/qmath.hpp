#pragma once

// Dense complex linear algebra for one and two qubits.
//
// Everything here works on dimension 2 (a single qubit) or 4 (particle
// tensor detector). Storage is fixed-size so values are cheap to copy and
// never allocate. Two-qubit operators use the ordering particle (x)
// detector, with the particle basis ordered (|b>, |a>) so that the textbook
// Pauli matrices apply unchanged.

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

namespace mzi::qmath {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

class ComplexMatrix {
 public:
  static constexpr int kMaxDim = 4;

  // Zero matrix of the given dimension; throws InvalidDimension unless 2 or 4.
  explicit ComplexMatrix(int dim);
  // Row-major entries; entries.size() must equal dim * dim.
  ComplexMatrix(int dim, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(int dim);
  static ComplexMatrix diagonal(std::span<const Complex> diag);

  int dim() const { return dim_; }

  Complex& operator()(int row, int col) { return data_[row * dim_ + col]; }
  const Complex& operator()(int row, int col) const { return data_[row * dim_ + col]; }

  ComplexMatrix adjoint() const;
  Complex trace() const;

  // Largest |m_ij - n_ij|; throws InvalidDimension on mismatch.
  double max_abs_diff(const ComplexMatrix& other) const;
  double frobenius_norm() const;
  // ||m - m^dagger||_max
  double hermiticity_defect() const;
  bool is_hermitian(double tol) const { return hermiticity_defect() <= tol; }

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

 private:
  int dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

class StateVector {
 public:
  // Throws InvalidDimension for dim not in {2, 4} and InvariantViolation if
  // the amplitudes are not unit norm within 1e-12.
  explicit StateVector(std::span<const Complex> amplitudes);
  StateVector(std::initializer_list<Complex> amplitudes);

  // Scales arbitrary nonzero amplitudes to unit norm.
  static StateVector normalized(std::span<const Complex> amplitudes);
  static StateVector basis(int dim, int index);

  int dim() const { return dim_; }
  const Complex& operator[](int i) const { return amp_[i]; }
  std::span<const Complex> amplitudes() const { return {amp_.data(), static_cast<std::size_t>(dim_)}; }

  // Multiplies by the phase that makes the first amplitude with modulus
  // above 1e-12 real and positive.
  StateVector canonical_phase() const;

 private:
  StateVector(int dim, const std::array<Complex, 4>& amp) : dim_(dim), amp_(amp) {}

  int dim_ = 0;
  std::array<Complex, 4> amp_{};
};

// <lhs|rhs>
Complex inner(const StateVector& lhs, const StateVector& rhs);
// |ket><bra|
ComplexMatrix outer(const StateVector& ket, const StateVector& bra);
ComplexMatrix projector(const StateVector& v);
StateVector apply(const ComplexMatrix& m, const StateVector& v);
// Smallest max-abs difference between a and e^{i t} b over global phases t.
double phase_insensitive_distance(const StateVector& a, const StateVector& b);

class DensityOperator {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kNegativeEigenTol = 1e-10;

  // Validates Hermiticity, unit trace, and positivity; throws
  // InvariantViolation naming the failed check.
  explicit DensityOperator(const ComplexMatrix& m);

  static DensityOperator pure(const StateVector& v);

  int dim() const { return matrix_.dim(); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const Complex& operator()(int row, int col) const { return matrix_(row, col); }

 private:
  ComplexMatrix matrix_;
};

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Kronecker product; left factor is the particle, right the detector.
ComplexMatrix tensor_product(const ComplexMatrix& particle, const ComplexMatrix& detector);

enum class Subsystem { Particle, Detector };

// Traces out `traced` from a two-qubit state.
DensityOperator partial_trace(const DensityOperator& rho, Subsystem traced);
// Same operation without validation, for unnormalized operators.
ComplexMatrix partial_trace(const ComplexMatrix& m, Subsystem traced);

struct EigenSystem {
  std::vector<double> values;         // ascending
  std::vector<StateVector> vectors;   // vectors[i] pairs with values[i]
};

// Cyclic complex Jacobi. Throws InvalidInput if m is not Hermitian within
// 1e-10, ConvergenceFailure if 100 sweeps do not reduce the off-diagonal
// Frobenius norm below 1e-13.
EigenSystem hermitian_eigen(const ComplexMatrix& m);

// -sum p log2 p with 0 log 0 = 0. Entries in [-1e-10, 0) count as zero.
double shannon_entropy(std::span<const double> probabilities);
double binary_entropy(double p);

// Entropy in bits.
double von_neumann_entropy(const DensityOperator& rho);

}  // namespace mzi::qmath

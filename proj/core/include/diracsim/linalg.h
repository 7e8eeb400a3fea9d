// Copyright 2026 The diracsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace diracsim {

using Complex = std::complex<double>;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Dense complex matrix with row-major storage. Sized for the small
// operators used throughout the simulator (dim <= 16).
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Complex> data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  // Largest entry modulus.
  double max_abs() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex scale);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

// Normalized complex amplitude vector, | ||psi|| - 1 | <= kNormTolerance.
class StateVector {
 public:
  static constexpr double kNormTolerance = 1e-9;

  // Throws InvalidInput if the amplitudes are not normalized.
  explicit StateVector(std::vector<Complex> amplitudes);

  // Rescales to unit norm; throws InvalidInput on a zero or non-finite vector.
  static StateVector normalized(std::vector<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return amplitudes_.size(); }
  const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }
  std::span<const Complex> amplitudes() const { return amplitudes_; }

  double norm() const;
  // |c_i|^2 for every basis index.
  std::vector<double> populations() const;

 private:
  std::vector<Complex> amplitudes_;
};

Complex inner(const StateVector& bra, const StateVector& ket);
double fidelity(const StateVector& a, const StateVector& b);

class HermitianOperator {
 public:
  static constexpr double kHermiticityTolerance = 1e-12;

  // Throws InvalidInput if the matrix is not square, has non-finite
  // entries, or ||M - M^dagger||_max exceeds the tolerance relative to ||M||_max.
  explicit HermitianOperator(ComplexMatrix m);

  // Skips the checks; for sums and conjugations of operators that were
  // already validated.
  static HermitianOperator trusted(ComplexMatrix m);

  const ComplexMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  struct TrustedTag {};
  HermitianOperator(ComplexMatrix m, TrustedTag) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

class UnitaryOperator {
 public:
  static constexpr double kUnitarityTolerance = 1e-10;

  // Checks U^dagger U = I to kUnitarityTolerance.
  explicit UnitaryOperator(ComplexMatrix u);

  // Skips the O(n^3) check; for results unitary by construction.
  static UnitaryOperator trusted(ComplexMatrix u);

  const ComplexMatrix& matrix() const { return u_; }
  std::size_t dim() const { return u_.rows(); }

  StateVector apply(const StateVector& psi) const;
  UnitaryOperator operator*(const UnitaryOperator& other) const;

 private:
  struct TrustedTag {};
  UnitaryOperator(ComplexMatrix u, TrustedTag) : u_(std::move(u)) {}
  ComplexMatrix u_;
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, unitary

  ComplexMatrix reconstruct() const;
};

// Cyclic complex Jacobi. Degenerate eigenspaces come back with an
// arbitrary orthonormal basis.
EigenDecomposition eigh(const HermitianOperator& m);

// exp(-i M dt) through eigh; dt in microseconds when M is angular MHz.
UnitaryOperator propagator(const HermitianOperator& m, double dt);
UnitaryOperator propagator(const EigenDecomposition& eig, double dt);

// exp(-i m dt) psi by a Taylor series on the vector, split into substeps
// of infinity-norm <= 1. Converged to machine precision.
StateVector expm_multiply(const HermitianOperator& m, double dt, const StateVector& psi);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Re(psi^dagger M psi).
double expectation(const StateVector& psi, const HermitianOperator& m);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
}  // namespace pauli

}  // namespace diracsim

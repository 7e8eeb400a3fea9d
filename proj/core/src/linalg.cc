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

#include "diracsim/linalg.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "diracsim/errors.h"

namespace diracsim {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_) {
    throw InvalidInput("ComplexMatrix: entry count " + std::to_string(data_.size()) +
                       " does not match " + std::to_string(rows_) + "x" + std::to_string(cols_));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw InvalidInput("ComplexMatrix: ragged initializer");
    }
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix sum: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw InvalidInput("matrix difference: shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols_ != b.rows_) throw InvalidInput("matrix product: inner dimensions differ");
  ComplexMatrix out(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

// --- StateVector ---

namespace {

double l2_norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.empty()) throw InvalidInput("StateVector: empty");
  const double n = l2_norm(amplitudes_);
  if (!std::isfinite(n) || std::abs(n - 1.0) > kNormTolerance) {
    throw InvalidInput("StateVector: norm " + std::to_string(n) + " is not 1");
  }
}

StateVector StateVector::normalized(std::vector<Complex> amplitudes) {
  const double n = l2_norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidInput("StateVector: cannot normalize zero vector");
  for (auto& z : amplitudes) z /= n;
  return StateVector(std::move(amplitudes));
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidInput("StateVector::basis: index out of range");
  std::vector<Complex> a(dim);
  a[index] = 1.0;
  return StateVector(std::move(a));
}

double StateVector::norm() const { return l2_norm(amplitudes_); }

std::vector<double> StateVector::populations() const {
  std::vector<double> p(amplitudes_.size());
  std::transform(amplitudes_.begin(), amplitudes_.end(), p.begin(),
                 [](const Complex& z) { return std::norm(z); });
  return p;
}

Complex inner(const StateVector& bra, const StateVector& ket) {
  if (bra.dim() != ket.dim()) throw InvalidInput("inner: dimension mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < bra.dim(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

// --- HermitianOperator / UnitaryOperator ---

HermitianOperator::HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.square() || m_.rows() == 0) throw InvalidInput("HermitianOperator: matrix must be square");
  if (!m_.all_finite()) throw InvalidInput("HermitianOperator: non-finite entries");
  const double scale = m_.max_abs();
  double asym = 0.0;
  for (std::size_t r = 0; r < m_.rows(); ++r)
    for (std::size_t c = r; c < m_.cols(); ++c)
      asym = std::max(asym, std::abs(m_(r, c) - std::conj(m_(c, r))));
  if (asym > kHermiticityTolerance * scale) {
    throw InvalidInput("HermitianOperator: ||M - M^dagger||_max = " + std::to_string(asym));
  }
}

HermitianOperator HermitianOperator::trusted(ComplexMatrix m) { return HermitianOperator(std::move(m), TrustedTag{}); }

UnitaryOperator::UnitaryOperator(ComplexMatrix u) : u_(std::move(u)) {
  if (!u_.square()) throw InvalidInput("UnitaryOperator: matrix must be square");
  const ComplexMatrix residual = u_.adjoint() * u_ - ComplexMatrix::identity(u_.rows());
  if (residual.max_abs() > kUnitarityTolerance) {
    throw InvalidInput("UnitaryOperator: U^dagger U deviates from identity by " +
                       std::to_string(residual.max_abs()));
  }
}

UnitaryOperator UnitaryOperator::trusted(ComplexMatrix u) { return {std::move(u), TrustedTag{}}; }

StateVector UnitaryOperator::apply(const StateVector& psi) const {
  if (psi.dim() != dim()) throw InvalidInput("UnitaryOperator::apply: dimension mismatch");
  std::vector<Complex> out(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    Complex s = 0.0;
    for (std::size_t c = 0; c < dim(); ++c) s += u_(r, c) * psi[c];
    out[r] = s;
  }
  return StateVector(std::move(out));
}

UnitaryOperator UnitaryOperator::operator*(const UnitaryOperator& other) const {
  return trusted(u_ * other.u_);
}

// --- eigh ---

ComplexMatrix EigenDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix scaled = eigenvectors;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) scaled(r, c) *= eigenvalues[c];
  return scaled * eigenvectors.adjoint();
}

namespace {

constexpr int kMaxJacobiSweeps = 64;
constexpr double kJacobiRelativeTolerance = 1e-15;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

double frobenius_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (const auto& z : a.data()) s += std::norm(z);
  return std::sqrt(s);
}

}  // namespace

EigenDecomposition eigh(const HermitianOperator& op) {
  const std::size_t n = op.dim();
  ComplexMatrix a = op.matrix();
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double target = kJacobiRelativeTolerance * frobenius_norm(a);
  int sweep = 0;
  for (; sweep < kMaxJacobiSweeps; ++sweep) {
    const double off = off_diagonal_norm(a);
    if (off <= target || off == 0.0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double b = std::abs(apq);
        if (b == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Once the element is below the rounding floor of both diagonal
        // entries it can be dropped without a rotation.
        if (sweep > 3 && std::abs(app) + 1e3 * b == std::abs(app) &&
            std::abs(aqq) + 1e3 * b == std::abs(aqq)) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        const Complex phase = apq / b;
        const double tau = (aqq - app) / (2.0 * b);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const Complex s_phase = s * phase;
        const Complex s_phase_conj = std::conj(s_phase);

        // A <- A J with J = [[c, s e^{i phi}], [-s e^{-i phi}, c]].
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp - s_phase_conj * akq;
          a(k, q) = s_phase * akp + c * akq;
        }
        // A <- J^dagger A.
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex aqk = a(q, k);
          a(p, k) = c * apk - s_phase * aqk;
          a(q, k) = s_phase_conj * apk + c * aqk;
        }
        a(p, p) = app - t * b;
        a(q, q) = aqq + t * b;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - s_phase_conj * vkq;
          v(k, q) = s_phase * vkp + c * vkq;
        }
      }
    }
  }
  if (sweep == kMaxJacobiSweeps) {
    throw ConvergenceFailure("eigh: Jacobi sweeps did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) {
    out.eigenvalues[c] = a(order[c], order[c]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = v(r, order[c]);
  }
  return out;
}

UnitaryOperator propagator(const EigenDecomposition& eig, double dt) {
  if (!std::isfinite(dt)) throw InvalidInput("propagator: non-finite time step");
  const std::size_t n = eig.eigenvalues.size();
  const ComplexMatrix& v = eig.eigenvectors;
  std::vector<Complex> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, -eig.eigenvalues[k] * dt);
  ComplexMatrix u(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(r, k) * phases[k] * std::conj(v(c, k));
      u(r, c) = s;
    }
  }
  return UnitaryOperator::trusted(std::move(u));
}

StateVector expm_multiply(const HermitianOperator& m, double dt, const StateVector& psi) {
  if (!std::isfinite(dt)) throw InvalidInput("expm_multiply: non-finite time step");
  const std::size_t n = m.dim();
  if (psi.dim() != n) throw InvalidInput("expm_multiply: state and operator dims differ");
  const ComplexMatrix& a = m.matrix();
  double norm = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double row = 0.0;
    for (std::size_t c = 0; c < n; ++c) row += std::abs(a(r, c));
    norm = std::max(norm, row);
  }
  const double pieces = std::max(1.0, std::ceil(norm * std::abs(dt)));
  const double h = dt / pieces;

  // Plain real arithmetic: std::complex products carry NaN recovery overhead.
  const Complex* entries = a.data().data();
  std::vector<double> re(n), im(n), term_re(n), term_im(n), next_re(n), next_im(n);
  for (std::size_t i = 0; i < n; ++i) {
    re[i] = psi[i].real();
    im[i] = psi[i].imag();
  }
  for (double p = 0.0; p < pieces; p += 1.0) {
    term_re = re;
    term_im = im;
    for (int k = 1; k < 64; ++k) {
      // next = (-i h / k) A term
      const double scale = h / static_cast<double>(k);
      double biggest = 0.0;
      for (std::size_t r = 0; r < n; ++r) {
        double sr = 0.0;
        double si = 0.0;
        for (std::size_t c = 0; c < n; ++c) {
          const Complex& e = entries[r * n + c];
          sr += e.real() * term_re[c] - e.imag() * term_im[c];
          si += e.real() * term_im[c] + e.imag() * term_re[c];
        }
        next_re[r] = scale * si;
        next_im[r] = -scale * sr;
        biggest = std::max(biggest, std::abs(next_re[r]) + std::abs(next_im[r]));
      }
      std::swap(term_re, next_re);
      std::swap(term_im, next_im);
      for (std::size_t r = 0; r < n; ++r) {
        re[r] += term_re[r];
        im[r] += term_im[r];
      }
      if (biggest < 1e-18) break;
    }
  }
  std::vector<Complex> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = Complex(re[i], im[i]);
  return StateVector(std::move(out));
}

UnitaryOperator propagator(const HermitianOperator& m, double dt) {
  if (!std::isfinite(dt)) throw InvalidInput("propagator: non-finite time step");
  return propagator(eigh(m), dt);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac)
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = a(ar, ac) * b(br, bc);
  return out;
}

double expectation(const StateVector& psi, const HermitianOperator& m) {
  if (psi.dim() != m.dim()) {
    throw InvalidInput("expectation: state dim " + std::to_string(psi.dim()) + " vs operator dim " +
                       std::to_string(m.dim()));
  }
  Complex s = 0.0;
  const ComplexMatrix& mat = m.matrix();
  for (std::size_t r = 0; r < psi.dim(); ++r) {
    Complex row = 0.0;
    for (std::size_t c = 0; c < psi.dim(); ++c) row += mat(r, c) * psi[c];
    s += std::conj(psi[r]) * row;
  }
  return s.real();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::identity(2); }
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
}  // namespace pauli

}  // namespace diracsim

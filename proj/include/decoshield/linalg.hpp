// Copyright 2026 The Decoshield Authors
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

// Dense complex matrices for one and two qubits.

#include "decoshield/errors.hpp"

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <string>

namespace decoshield {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kAlgebraic = 1e-12;
inline constexpr double kEigen = 1e-10;
}  // namespace tol

/// Square complex matrix of dimension 2 or 4, stored without heap allocation.
class ComplexMatrix {
public:
    using Storage = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

    explicit ComplexMatrix(int dim);
    explicit ComplexMatrix(const Storage& m);
    /// Row-major entries; count must be 4 or 16.
    ComplexMatrix(std::initializer_list<Complex> row_major);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(std::span<const double> entries);
    static ComplexMatrix diagonal(std::initializer_list<double> entries);
    /// |v><v| for a column vector of length 2 or 4.
    static ComplexMatrix outer(std::span<const Complex> v);

    int dim() const { return static_cast<int>(m_.rows()); }
    Complex operator()(int row, int col) const { return m_(row, col); }
    Complex& operator()(int row, int col) { return m_(row, col); }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const { return m_.trace(); }

    /// Largest |a_ij - b_ij|.
    double max_abs_diff(const ComplexMatrix& other) const;
    bool is_hermitian(double tolerance = tol::kAlgebraic) const;

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix operator+(const ComplexMatrix& rhs) const;
    ComplexMatrix operator-(const ComplexMatrix& rhs) const;
    ComplexMatrix operator*(Complex s) const;
    ComplexMatrix& operator+=(const ComplexMatrix& rhs);

    const Storage& eigen() const { return m_; }

private:
    void require_same_dim(const ComplexMatrix& other, const char* what) const;

    Storage m_;
};

inline ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Kronecker product of two single-qubit operators; the first factor is the
/// most significant qubit.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

/// Ascending eigenvalues of a Hermitian matrix.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h);

/// Hermitian, unit-trace, positive semidefinite matrix of dimension 2 or 4.
class DensityMatrix {
public:
    /// Validates all invariants; throws StateError on violation.
    explicit DensityMatrix(ComplexMatrix m);

    /// Divides by the trace before validating.
    static DensityMatrix normalized(const ComplexMatrix& m);
    static DensityMatrix maximally_mixed(int dim);
    /// |psi><psi| for a normalized ket.
    static DensityMatrix pure(std::span<const Complex> ket);

    const ComplexMatrix& matrix() const { return m_; }
    int dim() const { return m_.dim(); }
    Complex operator()(int row, int col) const { return m_(row, col); }

    /// tr(rho^2).
    double purity() const;
    bool is_pure(double tolerance = tol::kEigen) const;

private:
    ComplexMatrix m_;
};

/// Bloch-sphere angles of a pure qubit, theta in [0, pi], phi in [0, 2 pi).
struct PureQubit {
    double theta = 0.0;
    double phi = 0.0;

    static PureQubit equatorial(double phi);
};

DensityMatrix to_density(const PureQubit& state);

struct Conjugated {
    ComplexMatrix matrix;
    double weight;
};

/// K rho K^dagger (unnormalized) together with its trace.
Conjugated conjugate_by(const ComplexMatrix& op, const DensityMatrix& rho);
Conjugated conjugate_by(const ComplexMatrix& op, const ComplexMatrix& rho);

/// <psi|rho|psi> for a pure reference state psi. Throws StateError when psi
/// is not pure.
double fidelity(const DensityMatrix& psi, const DensityMatrix& rho);

/// Wootters concurrence of a two-qubit state, computed from the spin-flipped
/// matrix for any 4x4 density matrix.
double wootters_concurrence(const DensityMatrix& rho);

/// Wootters lambdas in descending order (sqrt of eigenvalues of rho * rho~).
std::array<double, 4> wootters_lambdas(const DensityMatrix& rho);

}  // namespace decoshield

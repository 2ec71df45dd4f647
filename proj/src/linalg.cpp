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

#include "decoshield/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace decoshield {

namespace {

void require_valid_dim(int dim) {
    if (dim != 2 && dim != 4) {
        throw DimensionError("matrix dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

int dim_from_count(std::size_t count) {
    if (count == 4) return 2;
    if (count == 16) return 4;
    throw DimensionError("expected 4 or 16 entries, got " + std::to_string(count));
}

}  // namespace

ComplexMatrix::ComplexMatrix(int dim) {
    require_valid_dim(dim);
    m_ = Storage::Zero(dim, dim);
}

ComplexMatrix::ComplexMatrix(const Storage& m) : m_(m) {
    if (m.rows() != m.cols()) throw DimensionError("matrix must be square");
    require_valid_dim(static_cast<int>(m.rows()));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<Complex> row_major)
    : ComplexMatrix(dim_from_count(row_major.size())) {
    const int n = dim();
    int k = 0;
    for (const Complex& v : row_major) {
        m_(k / n, k % n) = v;
        ++k;
    }
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    require_valid_dim(dim);
    return ComplexMatrix(Storage(Storage::Identity(dim, dim)));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix out(static_cast<int>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) {
        out(static_cast<int>(i), static_cast<int>(i)) = entries[i];
    }
    return out;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> entries) {
    return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix out(static_cast<int>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out(static_cast<int>(i), static_cast<int>(j)) = v[i] * std::conj(v[j]);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const { return ComplexMatrix(Storage(m_.adjoint())); }

ComplexMatrix ComplexMatrix::conjugate() const { return ComplexMatrix(Storage(m_.conjugate())); }

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    require_same_dim(other, "max_abs_diff");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

bool ComplexMatrix::is_hermitian(double tolerance) const {
    return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    require_same_dim(rhs, "product");
    return ComplexMatrix(Storage(m_ * rhs.m_));
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& rhs) const {
    require_same_dim(rhs, "sum");
    return ComplexMatrix(Storage(m_ + rhs.m_));
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& rhs) const {
    require_same_dim(rhs, "difference");
    return ComplexMatrix(Storage(m_ - rhs.m_));
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const { return ComplexMatrix(Storage(m_ * s)); }

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_dim(rhs, "sum");
    m_ += rhs.m_;
    return *this;
}

void ComplexMatrix::require_same_dim(const ComplexMatrix& other, const char* what) const {
    if (dim() != other.dim()) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(dim()) +
                             " vs " + std::to_string(other.dim()) + ")");
    }
}

ComplexMatrix pauli_x() { return ComplexMatrix{0.0, 1.0, 1.0, 0.0}; }

ComplexMatrix pauli_y() {
    const Complex i(0.0, 1.0);
    return ComplexMatrix{0.0, -i, i, 0.0};
}

ComplexMatrix pauli_z() { return ComplexMatrix{1.0, 0.0, 0.0, -1.0}; }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) throw DimensionError("tensor: both factors must be 2x2");
    ComplexMatrix out(4);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& h) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(Eigen::MatrixXcd(h.eigen()),
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (!m_.is_hermitian(tol::kAlgebraic)) throw StateError("density matrix is not Hermitian");
    const Complex tr = m_.trace();
    if (std::abs(tr.real() - 1.0) > tol::kAlgebraic || std::abs(tr.imag()) > tol::kAlgebraic) {
        throw StateError("density matrix trace is not 1");
    }
    const Eigen::VectorXd ev = hermitian_eigenvalues(m_);
    if (ev.minCoeff() < -tol::kEigen) throw StateError("density matrix is not positive");
}

DensityMatrix DensityMatrix::normalized(const ComplexMatrix& m) {
    const double tr = m.trace().real();
    if (!(tr > 0.0)) throw StateError("cannot normalize a matrix with non-positive trace");
    ComplexMatrix scaled = m * Complex(1.0 / tr);
    // Remove rounding asymmetry so the Hermitian check compares like with like.
    scaled = (scaled + scaled.adjoint()) * Complex(0.5);
    return DensityMatrix(std::move(scaled));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / dim));
}

DensityMatrix DensityMatrix::pure(std::span<const Complex> ket) {
    double norm2 = 0.0;
    for (const Complex& a : ket) norm2 += std::norm(a);
    if (std::abs(norm2 - 1.0) > tol::kAlgebraic) throw StateError("ket is not normalized");
    return DensityMatrix(ComplexMatrix::outer(ket));
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

bool DensityMatrix::is_pure(double tolerance) const {
    return std::abs(purity() - 1.0) <= tolerance;
}

PureQubit PureQubit::equatorial(double phi) { return PureQubit{std::numbers::pi / 2.0, phi}; }

DensityMatrix to_density(const PureQubit& state) {
    const double sx = std::sin(state.theta) * std::cos(state.phi);
    const double sy = std::sin(state.theta) * std::sin(state.phi);
    const double sz = std::cos(state.theta);
    ComplexMatrix m = ComplexMatrix::identity(2) + pauli_x() * Complex(sx) +
                      pauli_y() * Complex(sy) + pauli_z() * Complex(sz);
    return DensityMatrix(m * Complex(0.5));
}

Conjugated conjugate_by(const ComplexMatrix& op, const ComplexMatrix& rho) {
    if (op.dim() != rho.dim()) throw DimensionError("conjugate_by: dimension mismatch");
    ComplexMatrix out = op * rho * op.adjoint();
    return {out, out.trace().real()};
}

Conjugated conjugate_by(const ComplexMatrix& op, const DensityMatrix& rho) {
    return conjugate_by(op, rho.matrix());
}

double fidelity(const DensityMatrix& psi, const DensityMatrix& rho) {
    if (psi.dim() != rho.dim()) throw DimensionError("fidelity: dimension mismatch");
    if (!psi.is_pure()) throw StateError("fidelity: reference state is not pure");
    // For a pure psi, tr(psi rho) = <psi|rho|psi>.
    const double f = (psi.matrix() * rho.matrix()).trace().real();
    return std::clamp(f, 0.0, 1.0);
}

std::array<double, 4> wootters_lambdas(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw DimensionError("concurrence requires a two-qubit state");
    using Mat4 = Eigen::Matrix4cd;
    const Mat4 r = rho.matrix().eigen();
    Eigen::SelfAdjointEigenSolver<Mat4> eig(r);
    const Eigen::Vector4d w = eig.eigenvalues().cwiseMax(0.0);
    // rho = L L^dagger; the lambdas are the singular values of L^T (Y x Y) L.
    const Mat4 factor = eig.eigenvectors() * w.cwiseSqrt().asDiagonal();
    const Mat4 yy = tensor(pauli_y(), pauli_y()).eigen();
    const Mat4 flipped = factor.transpose() * yy * factor;
    Eigen::JacobiSVD<Mat4> svd(flipped);
    const Eigen::Vector4d s = svd.singularValues();
    std::array<double, 4> out{s(0), s(1), s(2), s(3)};
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

double wootters_concurrence(const DensityMatrix& rho) {
    const auto l = wootters_lambdas(rho);
    return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

}  // namespace decoshield

// Copyright 2026 The tqhe Authors
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

/**
 * @file
 * Dense complex matrices for the handful of small unitaries the protocol
 * manipulates: rotations U(γ), phases E(β), gate composites and blinded
 * final-decryption matrices. Everything is row-major and at most 2^j × 2^j
 * for small j.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace tqhe {

using cplx = std::complex<double>;

/// Default tolerance for every numeric equality check in the library.
inline constexpr double kTolerance = 1e-9;

/// Largest group size a block matrix may span.
inline constexpr std::size_t kMaxBlockQubits = 4;

class Matrix {
  public:
    Matrix() : rows_(1), cols_(1), data_(1, cplx{0.0, 0.0}) {}
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data);
    Matrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static Matrix identity(std::size_t dim);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> data() const { return data_; }

    friend bool operator==(const Matrix &, const Matrix &) = default;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<cplx> data_;
};

/// [[cos γ, −sin γ], [sin γ, cos γ]]
Matrix u_rot(double gamma);

/// diag(1, e^{iβ})
Matrix e_phase(double beta);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();

Matrix matmul(const Matrix &a, const Matrix &b);
Matrix operator*(const Matrix &a, const Matrix &b);
Matrix operator*(cplx s, const Matrix &a);
Matrix operator+(const Matrix &a, const Matrix &b);
Matrix operator-(const Matrix &a, const Matrix &b);

/// Kronecker product with `a` as the high-order factor.
Matrix tensor(const Matrix &a, const Matrix &b);

/// Kronecker product of a list, first element highest-order.
Matrix tensor_all(std::span<const Matrix> factors);

Matrix dagger(const Matrix &a);

/// Matrix-vector product.
std::vector<cplx> apply(const Matrix &m, std::span<const cplx> v);

double max_abs_diff(const Matrix &a, const Matrix &b);

bool approx_equal(const Matrix &a, const Matrix &b, double tol = kTolerance);

/// True if a·a† = I entrywise within tol.
bool is_unitary(const Matrix &a, double tol = kTolerance);

/// Returns c with |c| = 1 minimizing ‖a − c·b‖, and whether a = c·b within
/// tol entrywise.
std::pair<cplx, bool> global_phase_between(const Matrix &a, const Matrix &b, double tol = kTolerance);

/// One (a, b) bit pair of the final-decryption blinding prefix X^a Z^b.
struct MaskBits {
    bool a = false;
    bool b = false;
    friend bool operator==(const MaskBits &, const MaskBits &) = default;
};

/// ⊗_i X^{a_i} Z^{b_i} U(σ₂), first mask entry highest-order.
Matrix blinding_prefix(double sigma2, std::span<const MaskBits> mask);

/**
 * Solves [⊗_i X^{a_i} Z^{b_i} U(σ₂)] · Q′ = rhs for Q′.
 *
 * The prefix is a tensor of unitaries, so its inverse is its adjoint; no
 * general inversion is performed. `rhs` must already have σ₂ substituted.
 */
Matrix solve_blinded(const Matrix &rhs, double sigma2, std::span<const MaskBits> mask, double tol = kTolerance);

}  // namespace tqhe

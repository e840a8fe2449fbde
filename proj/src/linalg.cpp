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

#include "tqhe/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tqhe/error.hpp"

namespace tqhe {

namespace {

void require_finite(double angle, const char *what) {
    if (!std::isfinite(angle)) {
        throw InvalidArgument(std::string(what) + ": angle must be finite");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw InvalidArgument("Matrix: dimensions must be positive");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<cplx> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0 || data_.size() != rows * cols) {
        throw InvalidArgument("Matrix: entry count does not match dimensions");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<cplx>> rows) : rows_(rows.size()), cols_(0) {
    if (rows_ == 0) {
        throw InvalidArgument("Matrix: no rows");
    }
    cols_ = rows.begin()->size();
    if (cols_ == 0) {
        throw InvalidArgument("Matrix: empty row");
    }
    data_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw InvalidArgument("Matrix: ragged rows");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

Matrix Matrix::identity(std::size_t dim) {
    Matrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

Matrix u_rot(double gamma) {
    require_finite(gamma, "u_rot");
    const double c = std::cos(gamma);
    const double s = std::sin(gamma);
    return Matrix{{c, -s}, {s, c}};
}

Matrix e_phase(double beta) {
    require_finite(beta, "e_phase");
    return Matrix{{1.0, 0.0}, {0.0, std::polar(1.0, beta)}};
}

Matrix pauli_x() { return Matrix{{0.0, 1.0}, {1.0, 0.0}}; }

Matrix pauli_y() { return Matrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }

Matrix pauli_z() { return Matrix{{1.0, 0.0}, {0.0, -1.0}}; }

Matrix hadamard() {
    const double r = 1.0 / std::sqrt(2.0);
    return Matrix{{r, r}, {r, -r}};
}

Matrix matmul(const Matrix &a, const Matrix &b) {
    if (a.cols() != b.rows()) {
        throw InvalidArgument("matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
                              std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

Matrix operator*(const Matrix &a, const Matrix &b) { return matmul(a, b); }

Matrix operator*(cplx s, const Matrix &a) {
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) *= s;
        }
    }
    return out;
}

Matrix operator+(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("matrix sum: dimension mismatch");
    }
    Matrix out = a;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) += b(i, j);
        }
    }
    return out;
}

Matrix operator-(const Matrix &a, const Matrix &b) { return a + cplx{-1.0, 0.0} * b; }

Matrix tensor(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ai = 0; ai < a.rows(); ++ai) {
        for (std::size_t aj = 0; aj < a.cols(); ++aj) {
            const cplx s = a(ai, aj);
            for (std::size_t bi = 0; bi < b.rows(); ++bi) {
                for (std::size_t bj = 0; bj < b.cols(); ++bj) {
                    out(ai * b.rows() + bi, aj * b.cols() + bj) = s * b(bi, bj);
                }
            }
        }
    }
    return out;
}

Matrix tensor_all(std::span<const Matrix> factors) {
    if (factors.empty()) {
        return Matrix::identity(1);
    }
    Matrix out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        out = tensor(out, factors[i]);
    }
    return out;
}

Matrix dagger(const Matrix &a) {
    Matrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

std::vector<cplx> apply(const Matrix &m, std::span<const cplx> v) {
    if (m.cols() != v.size()) {
        throw InvalidArgument("apply: matrix/vector dimension mismatch");
    }
    std::vector<cplx> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc{};
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc += m(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

double max_abs_diff(const Matrix &a, const Matrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw InvalidArgument("max_abs_diff: dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
    }
    return worst;
}

bool approx_equal(const Matrix &a, const Matrix &b, double tol) {
    return a.rows() == b.rows() && a.cols() == b.cols() && max_abs_diff(a, b) <= tol;
}

bool is_unitary(const Matrix &a, double tol) {
    return a.square() && approx_equal(a * dagger(a), Matrix::identity(a.rows()), tol);
}

std::pair<cplx, bool> global_phase_between(const Matrix &a, const Matrix &b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return {cplx{1.0, 0.0}, false};
    }
    cplx overlap{};
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        overlap += std::conj(b.data()[i]) * a.data()[i];
    }
    const cplx c = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0, 0.0};
    return {c, approx_equal(a, c * b, tol)};
}

Matrix blinding_prefix(double sigma2, std::span<const MaskBits> mask) {
    if (mask.empty()) {
        throw InvalidArgument("blinding_prefix: empty mask");
    }
    const Matrix x = pauli_x();
    const Matrix z = pauli_z();
    const Matrix u = u_rot(sigma2);
    std::vector<Matrix> factors;
    factors.reserve(mask.size());
    for (const MaskBits &m : mask) {
        Matrix f = u;
        if (m.b) {
            f = z * f;
        }
        if (m.a) {
            f = x * f;
        }
        factors.push_back(std::move(f));
    }
    return tensor_all(factors);
}

Matrix solve_blinded(const Matrix &rhs, double sigma2, std::span<const MaskBits> mask, double tol) {
    if (mask.empty() || mask.size() > kMaxBlockQubits) {
        throw InvalidArgument("solve_blinded: mask length must be in 1.." + std::to_string(kMaxBlockQubits));
    }
    const std::size_t dim = std::size_t{1} << mask.size();
    if (rhs.rows() != dim || rhs.cols() != dim) {
        throw InvalidArgument("solve_blinded: rhs is not 2^j x 2^j for a mask of length j");
    }
    if (!is_unitary(rhs, tol)) {
        throw InvalidArgument("solve_blinded: rhs is not unitary");
    }
    return dagger(blinding_prefix(sigma2, mask)) * rhs;
}

}  // namespace tqhe

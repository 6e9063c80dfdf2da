// Copyright 2026 The mubtomo Authors
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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdlib>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "mubtomo/errors.hpp"

namespace mubtomo {

using Complex = std::complex<double>;

/// Tolerances for the validated domain types. The environment variable
/// MUBTOMO_TOL replaces all four defaults at once.
struct Tolerances {
    double herm = 1e-10;
    double trace = 1e-10;
    double norm = 1e-10;
    double psd = 1e-10;

    static Tolerances uniform(double tol) {
        return {tol, tol, tol, tol};
    }

    static Tolerances from_env() {
        const char *env = std::getenv("MUBTOMO_TOL");
        if (env == nullptr || *env == '\0') {
            return {};
        }
        char *end = nullptr;
        double tol = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(tol > 0) || !std::isfinite(tol)) {
            throw ParseError("MUBTOMO_TOL must be a positive number, got '" + std::string(env) + "'");
        }
        return uniform(tol);
    }
};

/// Dense row-major complex matrix.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw ShapeError(
                "ComplexMatrix: " + std::to_string(entries_.size()) + " entries for a " + std::to_string(rows_) +
                "x" + std::to_string(cols_) + " matrix");
        }
    }

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        entries_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw ShapeError("ComplexMatrix: ragged initializer");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t d) {
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix diagonal(std::span<const Complex> diag) {
        ComplexMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i) {
            m(i, i) = diag[i];
        }
        return m;
    }

    std::size_t rows() const {
        return rows_;
    }
    std::size_t cols() const {
        return cols_;
    }
    bool is_square() const {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const Complex> entries() const {
        return entries_;
    }
    std::span<Complex> entries() {
        return entries_;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_shape(other, "+=");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] += other.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_shape(other, "-=");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] -= other.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex s) {
        for (auto &e : entries_) {
            e *= s;
        }
        return *this;
    }

    /// this += s * other, without a temporary.
    void add_scaled(Complex s, const ComplexMatrix &other) {
        require_same_shape(other, "add_scaled");
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] += s * other.entries_[i];
        }
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        a *= s;
        return a;
    }

    bool operator==(const ComplexMatrix &other) const = default;

   private:
    void require_same_shape(const ComplexMatrix &other, const char *op) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw ShapeError(
                std::string("ComplexMatrix ") + op + ": " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                " vs " + std::to_string(other.rows_) + "x" + std::to_string(other.cols_));
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ShapeError(
            "matmul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " times " +
            std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}

inline Complex trace(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw ShapeError("trace of a non-square " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " matrix");
    }
    Complex t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

/// Tr(AB) without forming AB.
inline Complex trace_of_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw ShapeError("trace_of_product: incompatible shapes");
    }
    Complex t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            t += a(i, k) * b(k, i);
        }
    }
    return t;
}

inline ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b) - matmul(b, a);
}

inline double max_abs(const ComplexMatrix &a) {
    double m = 0;
    for (const auto &e : a.entries()) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("max_abs_diff: shape mismatch");
    }
    double m = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

/// Largest entrywise deviation from Hermiticity, ‖A − A†‖_max.
inline double hermiticity_defect(const ComplexMatrix &a) {
    if (!a.is_square()) {
        throw ShapeError("hermiticity_defect: non-square matrix");
    }
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return m;
}

/// A normalized ket. Construction fails if |⟨v|v⟩ − 1| exceeds the tolerance.
class UnitVector {
   public:
    explicit UnitVector(std::vector<Complex> amplitudes, double tol_norm = Tolerances{}.norm)
        : amplitudes_(std::move(amplitudes)) {
        if (amplitudes_.empty()) {
            throw ShapeError("UnitVector: empty amplitude list");
        }
        double n = 0;
        for (const auto &c : amplitudes_) {
            n += std::norm(c);
        }
        if (std::abs(n - 1.0) > tol_norm) {
            throw ValidityError("UnitVector: squared norm " + std::to_string(n) + " is not 1");
        }
    }

    std::size_t dim() const {
        return amplitudes_.size();
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    const Complex &operator[](std::size_t i) const {
        return amplitudes_[i];
    }

   private:
    std::vector<Complex> amplitudes_;
};

/// |v⟩⟨v| for an arbitrary amplitude list.
inline ComplexMatrix outer(std::span<const Complex> v) {
    ComplexMatrix out(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = 0; j < v.size(); ++j) {
            out(i, j) = v[i] * std::conj(v[j]);
        }
    }
    return out;
}

inline ComplexMatrix outer(const UnitVector &v) {
    return outer(v.amplitudes());
}

inline Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
    if (a.size() != b.size()) {
        throw ShapeError("inner: length mismatch");
    }
    Complex s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// Matrix-vector product.
inline std::vector<Complex> apply(const ComplexMatrix &m, std::span<const Complex> v) {
    if (m.cols() != v.size()) {
        throw ShapeError("apply: matrix/vector shape mismatch");
    }
    std::vector<Complex> out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out[i] += m(i, j) * v[j];
        }
    }
    return out;
}

namespace detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &a) {
    Eigen::MatrixXcd m(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            m(i, j) = a(i, j);
        }
    }
    return m;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
    ComplexMatrix a(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            a(i, j) = m(i, j);
        }
    }
    return a;
}

inline void require_hermitian(const ComplexMatrix &a, double tol_herm, const char *who) {
    if (!a.is_square()) {
        throw ShapeError(std::string(who) + ": non-square matrix");
    }
    double defect = hermiticity_defect(a);
    if (defect > tol_herm) {
        throw ValidityError(std::string(who) + ": matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

}  // namespace detail

/// Eigen-decomposition of the Hermitian part (A + A†)/2.
struct HermitianEigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k belongs to values[k]
};

inline HermitianEigensystem hermitian_eigensystem(const ComplexMatrix &a, double tol_herm = Tolerances{}.herm) {
    detail::require_hermitian(a, tol_herm, "hermitian_eigensystem");
    Eigen::MatrixXcd m = detail::to_eigen(a);
    Eigen::MatrixXcd h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    if (solver.info() != Eigen::Success) {
        throw ConsistencyError("hermitian_eigensystem: eigensolver did not converge");
    }
    HermitianEigensystem out;
    out.values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    out.vectors = detail::from_eigen(solver.eigenvectors());
    return out;
}

inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a, double tol_herm = Tolerances{}.herm) {
    return hermitian_eigensystem(a, tol_herm).values;
}

inline double min_eigenvalue(const ComplexMatrix &a, double tol_herm = Tolerances{}.herm) {
    auto values = hermitian_eigenvalues(a, tol_herm);
    return values.front();
}

/// ½‖A − B‖₁ for Hermitian A, B.
inline double trace_distance(const ComplexMatrix &a, const ComplexMatrix &b, double tol_herm = Tolerances{}.herm) {
    double s = 0;
    for (double v : hermitian_eigenvalues(a - b, tol_herm)) {
        s += std::abs(v);
    }
    return 0.5 * s;
}

/// A Hermitian, unit-trace, positive-semidefinite operator.
class DensityMatrix {
   public:
    explicit DensityMatrix(ComplexMatrix matrix, const Tolerances &tol = {}) : matrix_(std::move(matrix)) {
        detail::require_hermitian(matrix_, tol.herm, "DensityMatrix");
        if (matrix_.rows() == 0) {
            throw ShapeError("DensityMatrix: zero dimension");
        }
        Complex t = trace(matrix_);
        if (std::abs(t - 1.0) > tol.trace) {
            throw ValidityError("DensityMatrix: trace " + std::to_string(t.real()) + " is not 1");
        }
        double lo = min_eigenvalue(matrix_, tol.herm);
        if (lo < -tol.psd) {
            throw ValidityError("DensityMatrix: negative eigenvalue " + std::to_string(lo));
        }
    }

    static DensityMatrix pure(const UnitVector &v) {
        return DensityMatrix(outer(v));
    }

    static DensityMatrix maximally_mixed(std::size_t d) {
        return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
    }

    std::size_t dim() const {
        return matrix_.rows();
    }
    const ComplexMatrix &matrix() const {
        return matrix_;
    }

   private:
    ComplexMatrix matrix_;
};

}  // namespace mubtomo

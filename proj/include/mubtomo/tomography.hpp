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
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"

namespace mubtomo {

/// Measured or computed probabilities p_{aα}, stored by composite index.
class Tomogram {
   public:
    Tomogram(std::size_t dim, std::vector<double> probs) : dim_(dim), probs_(std::move(probs)) {
        if (dim_ == 0 || probs_.size() != grid_size(dim_)) {
            throw ShapeError("Tomogram: expected d(d+1) = " + std::to_string(grid_size(dim_)) + " probabilities");
        }
    }

    static Tomogram uniform(std::size_t d) {
        return Tomogram(d, std::vector<double>(grid_size(d), 1.0 / static_cast<double>(d)));
    }

    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return probs_.size();
    }
    double operator()(std::size_t a, std::size_t alpha) const {
        return probs_.at(a * dim_ + alpha);
    }
    double operator[](std::size_t composite) const {
        return probs_[composite];
    }
    const std::vector<double> &probs() const {
        return probs_;
    }

    /// Worst departure from a valid tomogram: entries outside [0, 1], per-basis
    /// sums away from 1, total sum away from d+1.
    double normalization_deviation() const {
        double worst = 0;
        double total = 0;
        for (std::size_t a = 0; a <= dim_; ++a) {
            double row = 0;
            for (std::size_t alpha = 0; alpha < dim_; ++alpha) {
                double p = (*this)(a, alpha);
                if (!std::isfinite(p)) {
                    return std::numeric_limits<double>::infinity();
                }
                worst = std::max({worst, -p, p - 1.0});
                row += p;
            }
            worst = std::max(worst, std::abs(row - 1.0));
            total += row;
        }
        return std::max(worst, std::abs(total - static_cast<double>(dim_ + 1)));
    }

    bool is_valid(double tol) const {
        return normalization_deviation() <= tol;
    }

    /// λ·this + (1 − λ)·other.
    Tomogram mix(const Tomogram &other, double lambda) const {
        if (other.dim_ != dim_) {
            throw ShapeError("Tomogram::mix: dimension mismatch");
        }
        std::vector<double> p(probs_.size());
        for (std::size_t i = 0; i < p.size(); ++i) {
            p[i] = lambda * probs_[i] + (1 - lambda) * other.probs_[i];
        }
        return Tomogram(dim_, std::move(p));
    }

    bool operator==(const Tomogram &) const = default;

   private:
    std::size_t dim_;
    std::vector<double> probs_;
};

/// ρ = c_I I + Σ_{b, β ≤ d-2} c_{bβ} Π_{bβ}, with c stored as c[b·(d-1) + β].
struct ExpansionCoefficients {
    std::size_t dim = 0;
    double c_identity = 0;
    std::vector<double> c;

    double operator()(std::size_t b, std::size_t beta) const {
        return c.at(b * (dim - 1) + beta);
    }
};

/// The block-diagonal linear system p − 1/d = M c and its analytic inverse.
struct InversionMatrix {
    std::size_t dim = 0;
    Eigen::MatrixXd block;          // entries δ_αβ − 1/d, size (d-1)
    Eigen::MatrixXd inverse_block;  // entries 1 + δ_αβ

    /// Full (d²−1)-square M: d+1 copies of `block` on the diagonal.
    Eigen::MatrixXd full() const {
        return block_diagonal(block);
    }
    Eigen::MatrixXd full_inverse() const {
        return block_diagonal(inverse_block);
    }

   private:
    Eigen::MatrixXd block_diagonal(const Eigen::MatrixXd &b) const {
        const Eigen::Index m = static_cast<Eigen::Index>(dim - 1);
        const Eigen::Index n = static_cast<Eigen::Index>(dim * dim - 1);
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index k = 0; k <= static_cast<Eigen::Index>(dim); ++k) {
            out.block(k * m, k * m, m, m) = b;
        }
        return out;
    }
};

/// p_{aα} = ⟨aα|ρ|aα⟩.
inline Tomogram scan(const DensityMatrix &state, const MubSet &set, const Tolerances &tol = {}) {
    const std::size_t d = set.dim();
    if (state.dim() != d) {
        throw ShapeError(
            "scan: state dimension " + std::to_string(state.dim()) + " vs MUB dimension " + std::to_string(d));
    }
    std::vector<double> p(set.size());
    for (std::size_t x = 0; x < set.size(); ++x) {
        const Ket &v = set.ket(x);
        Complex e = inner(v, mubtomo::apply(state.matrix(), v));
        if (std::abs(e.imag()) > tol.herm * static_cast<double>(d)) {
            throw ValidityError("scan: probability has imaginary part " + std::to_string(e.imag()));
        }
        p[x] = e.real();
    }
    return Tomogram(d, std::move(p));
}

/// Result of linear-inversion reconstruction. The matrix is Hermitian with
/// unit trace; positivity is reported, not enforced.
struct Reconstruction {
    ComplexMatrix rho;
    double normalization_deviation = 0;
    bool normalization_warning = false;
    double min_eigenvalue = 0;

    bool positive(double tol_psd = Tolerances{}.psd) const {
        return min_eigenvalue >= -tol_psd;
    }
};

namespace detail {

inline void require_tomogram_matches(const Tomogram &tom, const MubSet &set, const char *who) {
    if (tom.dim() != set.dim()) {
        throw ShapeError(
            std::string(who) + ": tomogram dimension " + std::to_string(tom.dim()) + " vs MUB dimension " +
            std::to_string(set.dim()));
    }
}

}  // namespace detail

/// ρ = Σ_{bβ} p_{bβ} (Π_{bβ} − I/(d+1)).
///
/// Tomograms whose normalization is off by more than `tol.trace` but at most
/// 10·tol.trace are accepted with `normalization_warning` set; worse ones throw
/// InvariantViolation. For such inputs the trace Σp/(d+1) of the sum is pinned
/// back to 1 by adding (1 − Σp/(d+1))/d · I, which keeps the map affine and is
/// zero for normalized tomograms.
inline Reconstruction reconstruct(const Tomogram &tom, const MubSet &set, const Tolerances &tol = {}) {
    detail::require_tomogram_matches(tom, set, "reconstruct");
    Reconstruction out;
    out.normalization_deviation = tom.normalization_deviation();
    if (!(out.normalization_deviation <= 10 * tol.trace)) {
        throw InvariantViolation(
            "reconstruct: tomogram normalization off by " + std::to_string(out.normalization_deviation) +
            " (limit " + std::to_string(10 * tol.trace) + ")");
    }
    out.normalization_warning = out.normalization_deviation > tol.trace;

    const std::size_t d = set.dim();
    const double inv_d1 = 1.0 / static_cast<double>(d + 1);
    ComplexMatrix rho(d, d);
    double total = 0;
    for (std::size_t x = 0; x < set.size(); ++x) {
        const Ket &v = set.ket(x);
        const double p = tom[x];
        total += p;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                rho(i, j) += p * (v[i] * std::conj(v[j]));
            }
        }
    }
    const double diag_shift = -total * inv_d1 + (1.0 - total * inv_d1) / static_cast<double>(d);
    for (std::size_t i = 0; i < d; ++i) {
        rho(i, i) += diag_shift;
    }
    out.rho = std::move(rho);
    out.min_eigenvalue = min_eigenvalue(out.rho, tol.herm);
    return out;
}

/// Closed form c_{bβ} = p_{bβ} − p_{b,d-1}, c_I = (1 − Σc)/d.
inline ExpansionCoefficients coefficients_from_tomogram(const Tomogram &tom) {
    const std::size_t d = tom.dim();
    ExpansionCoefficients out{d, 0, std::vector<double>((d + 1) * (d - 1))};
    double sum = 0;
    for (std::size_t b = 0; b <= d; ++b) {
        for (std::size_t beta = 0; beta + 1 < d; ++beta) {
            double c = tom(b, beta) - tom(b, d - 1);
            out.c[b * (d - 1) + beta] = c;
            sum += c;
        }
    }
    out.c_identity = (1.0 - sum) / static_cast<double>(d);
    return out;
}

/// ρ = I/d + Σ_{b, β ≤ d-2} c_{bβ} (Π_{bβ} − I/d).
inline ComplexMatrix state_from_coefficients(const ExpansionCoefficients &coeffs, const MubSet &set) {
    const std::size_t d = set.dim();
    if (coeffs.dim != d || coeffs.c.size() != (d + 1) * (d - 1)) {
        throw ShapeError("state_from_coefficients: coefficient grid does not match the MUB dimension");
    }
    const double inv_d = 1.0 / static_cast<double>(d);
    ComplexMatrix rho = ComplexMatrix::identity(d) * Complex(inv_d);
    for (std::size_t b = 0; b <= d; ++b) {
        for (std::size_t beta = 0; beta + 1 < d; ++beta) {
            const double c = coeffs(b, beta);
            const Ket &v = set.ket(b, beta);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j) {
                    rho(i, j) += c * (v[i] * std::conj(v[j]));
                }
                rho(i, i) -= c * inv_d;
            }
        }
    }
    return rho;
}

inline InversionMatrix inversion_matrix(std::size_t d) {
    if (d < 2) {
        throw UnsupportedDimension("inversion_matrix: d must be at least 2");
    }
    const auto m = static_cast<Eigen::Index>(d - 1);
    InversionMatrix out;
    out.dim = d;
    out.block = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(d));
    out.inverse_block = Eigen::MatrixXd::Identity(m, m) + Eigen::MatrixXd::Ones(m, m);
    return out;
}

/// M assembled entry by entry from Tr[Π_{aα} Π_{bβ}] − 1/d, rows and columns
/// restricted to α, β ≤ d-2.
inline Eigen::MatrixXd inversion_matrix_from_projectors(const ProjectorSet &proj) {
    const std::size_t d = proj.dim();
    const auto n = static_cast<Eigen::Index>(d * d - 1);
    Eigen::MatrixXd m(n, n);
    for (std::size_t a = 0; a <= d; ++a) {
        for (std::size_t alpha = 0; alpha + 1 < d; ++alpha) {
            for (std::size_t b = 0; b <= d; ++b) {
                for (std::size_t beta = 0; beta + 1 < d; ++beta) {
                    Complex t = trace_of_product(proj(a, alpha), proj(b, beta));
                    m(static_cast<Eigen::Index>(a * (d - 1) + alpha), static_cast<Eigen::Index>(b * (d - 1) + beta)) =
                        t.real() - 1.0 / static_cast<double>(d);
                }
            }
        }
    }
    return m;
}

/// Solves p_{aα} − 1/d = Σ M_{aα,bβ} c_{bβ} (α, β ≤ d-2) block by block with
/// the analytic inverse blocks 1 + δ_αβ.
inline ExpansionCoefficients solve_coefficients_linear(const Tomogram &tom) {
    const std::size_t d = tom.dim();
    const InversionMatrix inv = inversion_matrix(d);
    const auto m = static_cast<Eigen::Index>(d - 1);
    ExpansionCoefficients out{d, 0, std::vector<double>((d + 1) * (d - 1))};
    double sum = 0;
    Eigen::VectorXd rhs(m);
    for (std::size_t b = 0; b <= d; ++b) {
        for (Eigen::Index beta = 0; beta < m; ++beta) {
            rhs(beta) = tom(b, static_cast<std::size_t>(beta)) - 1.0 / static_cast<double>(d);
        }
        Eigen::VectorXd c = inv.inverse_block * rhs;
        for (Eigen::Index beta = 0; beta < m; ++beta) {
            out.c[b * (d - 1) + static_cast<std::size_t>(beta)] = c(beta);
            sum += c(beta);
        }
    }
    out.c_identity = (1.0 - sum) / static_cast<double>(d);
    return out;
}

}  // namespace mubtomo

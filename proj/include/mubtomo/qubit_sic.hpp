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

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/starprod.hpp"

namespace mubtomo::qubit {

inline ComplexMatrix sigma_x() {
    return {{0, 1}, {1, 0}};
}
inline ComplexMatrix sigma_y() {
    return {{0, Complex(0, -1)}, {Complex(0, 1), 0}};
}
inline ComplexMatrix sigma_z() {
    return {{1, 0}, {0, -1}};
}

/// σ·n for a real 3-vector n.
inline ComplexMatrix sigma_dot(const std::array<double, 3> &n) {
    return sigma_x() * Complex(n[0]) + sigma_y() * Complex(n[1]) + sigma_z() * Complex(n[2]);
}

/// ½(I + σ·n).
inline ComplexMatrix bloch_projector(const std::array<double, 3> &n) {
    return (ComplexMatrix::identity(2) + sigma_dot(n)) * Complex(0.5);
}

/// s_α = δ_α0 − δ_α1.
inline double alpha_sign(std::size_t alpha) {
    return alpha == 0 ? 1.0 : -1.0;
}

/// ½(I ± σ_w), w = x, y, z for a = 0, 1, 2; α = 0 is the + sign.
inline ProjectorSet qubit_mub_projectors() {
    std::vector<ComplexMatrix> out;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t alpha = 0; alpha < 2; ++alpha) {
            std::array<double, 3> n{0, 0, 0};
            n[a] = alpha_sign(alpha);
            out.push_back(bloch_projector(n));
        }
    }
    return ProjectorSet(2, std::move(out));
}

inline int levi_civita(std::size_t a, std::size_t b, std::size_t c) {
    if (a == b || b == c || a == c) {
        return 0;
    }
    // Even permutations of (0, 1, 2) are cyclic shifts.
    return ((b + 3 - a) % 3 == 1) ? 1 : -1;
}

/// T = ¼[1 + 2(δ_ab δ_αβ + δ_bc δ_βγ + δ_ca δ_γα) − (δ_ab + δ_bc + δ_ca)
///       + i ε_abc s_α s_β s_γ].
inline Complex triple_product_closed_form(MubIndex x1, MubIndex x2, MubIndex x3) {
    for (const auto &x : {x1, x2, x3}) {
        if (x.a > 2 || x.alpha > 1) {
            throw ShapeError("triple_product_closed_form: qubit index out of range");
        }
    }
    auto same = [](MubIndex p, MubIndex q) { return p == q ? 1.0 : 0.0; };
    auto same_basis = [](MubIndex p, MubIndex q) { return p.a == q.a ? 1.0 : 0.0; };
    double re = 1 + 2 * (same(x1, x2) + same(x2, x3) + same(x3, x1)) -
                (same_basis(x1, x2) + same_basis(x2, x3) + same_basis(x3, x1));
    double im = levi_civita(x1.a, x2.a, x3.a) * alpha_sign(x1.alpha) * alpha_sign(x2.alpha) * alpha_sign(x3.alpha);
    return Complex(re, im) * 0.25;
}

/// 𝔇(aα; bβ) = 1/6 + δ_ab(δ_αβ − ½).
inline double delta_function_closed_form(MubIndex x, MubIndex y) {
    double v = 1.0 / 6.0;
    if (x.a == y.a) {
        v += (x.alpha == y.alpha ? 1.0 : 0.0) - 0.5;
    }
    return v;
}

/// Sign function S(k; a, α), k = 1..4, transcribed from the published table.
/// Columns are ordered 00, 01, 10, 11, 20, 21.
inline constexpr std::array<std::array<int, 6>, 4> kSignTable = {{
    {+1, -1, +1, -1, +1, -1},
    {+1, -1, -1, +1, -1, +1},
    {-1, +1, +1, -1, -1, +1},
    {-1, +1, -1, +1, +1, -1},
}};

inline int sign_function(std::size_t k, std::size_t a, std::size_t alpha) {
    if (k < 1 || k > 4 || a > 2 || alpha > 1) {
        throw ShapeError(
            "sign_function: need k in 1..4, a in 0..2, alpha in 0..1; got (" + std::to_string(k) + "; " +
            std::to_string(a) + "," + std::to_string(alpha) + ")");
    }
    return kSignTable[k - 1][a * 2 + alpha];
}

using SicSymbol = std::array<Complex, 4>;

/// Qubit SIC-POVM scheme: P_k = ½(I + σ·n_k), U_k = P_k / 2, D_k = 3 P_k − I,
/// k = 1..4 stored at positions 0..3.
class QubitSic {
   public:
    QubitSic() {
        const double s = 1.0 / std::sqrt(3.0);
        directions_ = {{{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}}};
        for (std::size_t k = 0; k < 4; ++k) {
            projectors_[k] = bloch_projector(directions_[k]);
        }
        // The table must agree with sign(n_k · e_a) · s_α.
        for (std::size_t k = 0; k < 4; ++k) {
            for (std::size_t a = 0; a < 3; ++a) {
                for (std::size_t alpha = 0; alpha < 2; ++alpha) {
                    int geometric = (directions_[k][a] > 0 ? 1 : -1) * (alpha == 0 ? 1 : -1);
                    if (geometric != sign_function(k + 1, a, alpha)) {
                        throw ConsistencyError("QubitSic: sign table disagrees with the tetrahedron geometry");
                    }
                }
            }
        }
    }

    const std::array<std::array<double, 3>, 4> &directions() const {
        return directions_;
    }
    const std::array<ComplexMatrix, 4> &projectors() const {
        return projectors_;
    }
    /// 1-based, matching the table.
    const ComplexMatrix &projector(std::size_t k) const {
        return projectors_.at(k - 1);
    }

    ComplexMatrix dequantizer(std::size_t k) const {
        return projector(k) * Complex(0.5);
    }
    ComplexMatrix quantizer(std::size_t k) const {
        return projector(k) * Complex(3.0) - ComplexMatrix::identity(2);
    }

    SchemePair as_scheme() const {
        SchemePair s;
        s.dim = 2;
        for (std::size_t k = 1; k <= 4; ++k) {
            s.dequantizers.push_back(dequantizer(k));
            s.quantizers.push_back(quantizer(k));
        }
        return s;
    }

    SicSymbol symbol(const ComplexMatrix &op) const {
        auto v = scheme_symbol(op, as_scheme());
        return {v[0], v[1], v[2], v[3]};
    }

    ComplexMatrix operator_from_symbol(const SicSymbol &f) const {
        ComplexMatrix out(2, 2);
        for (std::size_t k = 1; k <= 4; ++k) {
            out.add_scaled(f[k - 1], quantizer(k));
        }
        return out;
    }

   private:
    std::array<std::array<double, 3>, 4> directions_;
    std::array<ComplexMatrix, 4> projectors_;
};

inline QubitSic sic_scheme() {
    return QubitSic();
}

/// K_{SIC→MUB}(k; aα) = ½(1 + √3 S(k; aα)); rows k = 1..4, columns composite aα.
inline ComplexMatrix sic_to_mub_kernel() {
    ComplexMatrix k(4, 6);
    for (std::size_t row = 0; row < 4; ++row) {
        for (std::size_t x = 0; x < 6; ++x) {
            k(row, x) = 0.5 * (1 + std::sqrt(3.0) * kSignTable[row][x]);
        }
    }
    return k;
}

/// K_{MUB→SIC}(aα; k) = (1/12)(1 + √3 S(k; aα)); rows composite aα, columns k.
inline ComplexMatrix mub_to_sic_kernel() {
    ComplexMatrix k(6, 4);
    for (std::size_t x = 0; x < 6; ++x) {
        for (std::size_t col = 0; col < 4; ++col) {
            k(x, col) = (1 + std::sqrt(3.0) * kSignTable[col][x]) / 12.0;
        }
    }
    return k;
}

inline MubSymbol intertwine_sic_to_mub(const SicSymbol &f) {
    return MubSymbol(2, transport(f, sic_to_mub_kernel()), SymbolKind::Ordinary);
}

inline SicSymbol intertwine_mub_to_sic(const MubSymbol &f) {
    if (f.dim() != 2) {
        throw ShapeError("intertwine_mub_to_sic: MUB symbol must be for d = 2, got d = " + std::to_string(f.dim()));
    }
    auto v = transport(f.values(), mub_to_sic_kernel());
    return {v[0], v[1], v[2], v[3]};
}

}  // namespace mubtomo::qubit

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

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "mubtomo/core.hpp"
#include "mubtomo/report.hpp"

namespace mubtomo {

using Ket = std::vector<Complex>;

/// A point (a, α) of the MUB index grid: basis a ∈ {0..d}, state α ∈ {0..d-1}.
/// Flattened as the composite index x = a·d + α.
struct MubIndex {
    std::size_t a = 0;
    std::size_t alpha = 0;

    bool operator==(const MubIndex &) const = default;

    std::size_t composite(std::size_t d) const {
        return a * d + alpha;
    }
    static MubIndex from_composite(std::size_t x, std::size_t d) {
        return {x / d, x % d};
    }
};

/// Number of grid points d(d+1).
inline std::size_t grid_size(std::size_t d) {
    return d * (d + 1);
}

/// Tr[Π_{aα} Π_{bβ}] for a full MUB family: (1/d)(1 − δ_ab) + δ_ab δ_αβ.
inline double mub_overlap(std::size_t d, MubIndex x, MubIndex y) {
    if (x.a == y.a) {
        return x.alpha == y.alpha ? 1.0 : 0.0;
    }
    return 1.0 / static_cast<double>(d);
}

inline double mub_overlap(std::size_t d, std::size_t x, std::size_t y) {
    return mub_overlap(d, MubIndex::from_composite(x, d), MubIndex::from_composite(y, d));
}

/// d+1 bases of d kets each. The constructor checks shape only; use
/// validate_mub for orthonormality and unbiasedness.
class MubSet {
   public:
    MubSet(std::size_t dim, std::vector<std::vector<Ket>> bases) : dim_(dim), bases_(std::move(bases)) {
        if (dim_ == 0) {
            throw ShapeError("MubSet: zero dimension");
        }
        if (bases_.size() != dim_ + 1) {
            throw ShapeError(
                "MubSet: expected " + std::to_string(dim_ + 1) + " bases, got " + std::to_string(bases_.size()));
        }
        for (const auto &basis : bases_) {
            if (basis.size() != dim_) {
                throw ShapeError("MubSet: every basis needs exactly d kets");
            }
            for (const auto &ket : basis) {
                if (ket.size() != dim_) {
                    throw ShapeError("MubSet: every ket needs exactly d amplitudes");
                }
            }
        }
    }

    std::size_t dim() const {
        return dim_;
    }
    std::size_t num_bases() const {
        return bases_.size();
    }
    std::size_t size() const {
        return grid_size(dim_);
    }

    const std::vector<Ket> &basis(std::size_t a) const {
        return bases_.at(a);
    }
    const Ket &ket(std::size_t a, std::size_t alpha) const {
        return bases_.at(a).at(alpha);
    }
    const Ket &ket(MubIndex x) const {
        return ket(x.a, x.alpha);
    }
    const Ket &ket(std::size_t composite) const {
        return ket(MubIndex::from_composite(composite, dim_));
    }

    const std::vector<std::vector<Ket>> &bases() const {
        return bases_;
    }

    bool operator==(const MubSet &) const = default;

   private:
    std::size_t dim_;
    std::vector<std::vector<Ket>> bases_;
};

inline bool is_prime(std::size_t n) {
    if (n < 2) {
        return false;
    }
    for (std::size_t k = 2; k * k <= n; ++k) {
        if (n % k == 0) {
            return false;
        }
    }
    return true;
}

namespace detail {

/// Multiplies a ket by a global phase so that its first nonzero amplitude is
/// real and positive.
inline void canonicalize_phase(Ket &ket) {
    for (auto &c : ket) {
        double m = std::abs(c);
        if (m > 1e-14) {
            Complex phase = std::conj(c) / m;
            for (auto &e : ket) {
                e *= phase;
            }
            c = m;
            return;
        }
    }
}

inline std::vector<std::vector<Ket>> qubit_bases() {
    const double h = std::numbers::sqrt2 / 2;
    const Complex i(0, 1);
    return {
        {{h, h}, {h, -h}},          // σx eigenbasis (+, −)
        {{h, h * i}, {h, -h * i}},  // σy eigenbasis (+, −)
        {{1, 0}, {0, 1}},           // σz eigenbasis (+, −)
    };
}

}  // namespace detail

/// Full MUB family for d = 2 or d an odd prime.
///
/// Odd prime d uses the Wootters-Fields quadratic-phase bases
/// ⟨k|aα⟩ = d^{-1/2} ω^{a k² + α k}, ω = e^{2πi/d}, for a ∈ {0..d-1}, and the
/// computational basis for a = d. For d = 2 the bases are the σx, σy, σz
/// eigenbases in that order, + eigenvector first. Every ket has its first
/// nonzero amplitude real and positive.
inline MubSet construct_mub(std::size_t d) {
    if (d == 2) {
        return MubSet(2, detail::qubit_bases());
    }
    if (!is_prime(d)) {
        std::string why = d < 2 ? "d must be at least 2" : "d = " + std::to_string(d) + " is not prime";
        throw UnsupportedDimension(
            "construct_mub: " + why +
            "; supported dimensions are 2 and odd primes (prime powers p^n, n >= 2, need finite-field "
            "arithmetic and are not implemented)");
    }
    const double amp = 1.0 / std::sqrt(static_cast<double>(d));
    // ω^n for n ∈ {0..d-1}; exponents are reduced mod d in integer arithmetic.
    std::vector<Complex> roots(d);
    for (std::size_t n = 0; n < d; ++n) {
        roots[n] = std::polar(amp, 2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(d));
    }
    roots[0] = amp;

    std::vector<std::vector<Ket>> bases(d + 1, std::vector<Ket>(d, Ket(d)));
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            for (std::size_t k = 0; k < d; ++k) {
                std::size_t e = (a * ((k * k) % d) + alpha * k) % d;
                bases[a][alpha][k] = roots[e];
            }
            detail::canonicalize_phase(bases[a][alpha]);
        }
    }
    for (std::size_t alpha = 0; alpha < d; ++alpha) {
        bases[d][alpha][alpha] = 1.0;
    }
    return MubSet(d, std::move(bases));
}

struct MubValidation {
    CheckResult orthonormality{"orthonormality", 0};
    CheckResult unbiasedness{"unbiasedness", 0};
    bool basis_count_ok = false;

    bool passed() const {
        return basis_count_ok && orthonormality.passed() && unbiasedness.passed();
    }
};

/// Exhaustive check of |⟨aα|bβ⟩ − δ_αβ| within a basis and
/// ||⟨aα|bβ⟩|² − 1/d| across bases, over every ordered pair of kets.
inline MubValidation validate_mub(const MubSet &set, double tol = 1e-12) {
    MubValidation report;
    report.orthonormality.tolerance = tol;
    report.unbiasedness.tolerance = tol;
    const std::size_t d = set.dim();
    report.basis_count_ok = set.num_bases() == d + 1;
    const std::size_t n = set.size();
    const double inv_d = 1.0 / static_cast<double>(d);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            auto ix = MubIndex::from_composite(x, d);
            auto iy = MubIndex::from_composite(y, d);
            Complex ov = inner(set.ket(x), set.ket(y));
            if (ix.a == iy.a) {
                double expected = ix.alpha == iy.alpha ? 1.0 : 0.0;
                report.orthonormality.record(std::abs(ov - expected), {x, y});
            } else {
                report.unbiasedness.record(std::abs(std::norm(ov) - inv_d), {x, y});
            }
        }
    }
    return report;
}

/// Rank-1 projectors Π_{aα} = |aα⟩⟨aα|, stored by composite index.
class ProjectorSet {
   public:
    ProjectorSet(std::size_t dim, std::vector<ComplexMatrix> projectors)
        : dim_(dim), projectors_(std::move(projectors)) {
        if (projectors_.size() != grid_size(dim_)) {
            throw ShapeError("ProjectorSet: expected d(d+1) projectors");
        }
        for (const auto &p : projectors_) {
            if (p.rows() != dim_ || p.cols() != dim_) {
                throw ShapeError("ProjectorSet: projector of wrong shape");
            }
        }
    }

    std::size_t dim() const {
        return dim_;
    }
    std::size_t size() const {
        return projectors_.size();
    }
    const ComplexMatrix &operator[](std::size_t composite) const {
        return projectors_[composite];
    }
    const ComplexMatrix &operator()(std::size_t a, std::size_t alpha) const {
        return projectors_.at(a * dim_ + alpha);
    }
    const std::vector<ComplexMatrix> &all() const & {
        return projectors_;
    }
    std::vector<ComplexMatrix> all() && {
        return std::move(projectors_);
    }

   private:
    std::size_t dim_;
    std::vector<ComplexMatrix> projectors_;
};

inline ProjectorSet projectors(const MubSet &set) {
    std::vector<ComplexMatrix> out;
    out.reserve(set.size());
    for (std::size_t x = 0; x < set.size(); ++x) {
        out.push_back(outer(set.ket(x)));
    }
    return ProjectorSet(set.dim(), std::move(out));
}

/// Effects E_{aα} = Π_{aα} / (d+1) of the MUB-POVM.
struct MubPovm {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> effects;

    const ComplexMatrix &operator()(std::size_t a, std::size_t alpha) const {
        return effects.at(a * dim + alpha);
    }
};

inline MubPovm povm(const MubSet &set) {
    MubPovm out{set.dim(), {}};
    const Complex scale = 1.0 / static_cast<double>(set.dim() + 1);
    for (const auto &p : projectors(set).all()) {
        out.effects.push_back(p * scale);
    }
    return out;
}

/// Rank of the Hilbert-Schmidt Gram matrix of {I} ∪ {Π_{aα} : α ≤ d-2}.
/// Equals d² for a full MUB family.
inline std::size_t spanning_rank(const ProjectorSet &proj, double cutoff = 1e-9) {
    const std::size_t d = proj.dim();
    std::vector<const ComplexMatrix *> ops;
    ComplexMatrix id = ComplexMatrix::identity(d);
    ops.push_back(&id);
    for (std::size_t a = 0; a <= d; ++a) {
        for (std::size_t alpha = 0; alpha + 1 < d; ++alpha) {
            ops.push_back(&proj(a, alpha));
        }
    }
    ComplexMatrix gram(ops.size(), ops.size());
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = 0; j < ops.size(); ++j) {
            gram(i, j) = trace_of_product(dagger(*ops[i]), *ops[j]);
        }
    }
    std::size_t rank = 0;
    for (double v : hermitian_eigenvalues(gram, 1e-9)) {
        if (v > cutoff) {
            ++rank;
        }
    }
    return rank;
}

}  // namespace mubtomo

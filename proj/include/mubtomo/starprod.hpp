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

#include <Eigen/Dense>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/random.hpp"
#include "mubtomo/report.hpp"

namespace mubtomo {

/// A star-product scheme: symbols are f(x) = Tr[A U(x)], operators are
/// A = Σ_x f(x) D(x). Used both for the MUB scheme and for the qubit SIC scheme.
struct SchemePair {
    std::size_t dim = 0;
    std::vector<ComplexMatrix> dequantizers;
    std::vector<ComplexMatrix> quantizers;

    std::size_t size() const {
        return dequantizers.size();
    }
};

/// U_{aα} = Π_{aα}, D_{aα} = Π_{aα} − I/(d+1).
inline SchemePair scheme(const MubSet &set) {
    SchemePair out;
    out.dim = set.dim();
    const ComplexMatrix shift = ComplexMatrix::identity(set.dim()) * Complex(1.0 / static_cast<double>(set.dim() + 1));
    for (const auto &p : projectors(set).all()) {
        out.dequantizers.push_back(p);
        out.quantizers.push_back(p - shift);
    }
    return out;
}

enum class SymbolKind { Ordinary, Dual };
using KernelKind = SymbolKind;

inline const char *to_string(SymbolKind k) {
    return k == SymbolKind::Ordinary ? "ordinary" : "dual";
}

/// Function on the (a, α) grid, stored by composite index.
class MubSymbol {
   public:
    MubSymbol(std::size_t dim, std::vector<Complex> values, SymbolKind kind = SymbolKind::Ordinary)
        : dim_(dim), kind_(kind), values_(std::move(values)) {
        if (dim_ == 0 || values_.size() != grid_size(dim_)) {
            throw ShapeError("MubSymbol: expected d(d+1) = " + std::to_string(grid_size(dim_)) + " values");
        }
    }

    std::size_t dim() const {
        return dim_;
    }
    SymbolKind kind() const {
        return kind_;
    }
    std::size_t size() const {
        return values_.size();
    }
    const Complex &operator[](std::size_t x) const {
        return values_[x];
    }
    const Complex &operator()(std::size_t a, std::size_t alpha) const {
        return values_.at(a * dim_ + alpha);
    }
    const std::vector<Complex> &values() const {
        return values_;
    }

    double max_imag() const {
        double m = 0;
        for (const auto &v : values_) {
            m = std::max(m, std::abs(v.imag()));
        }
        return m;
    }

    double max_abs_diff(const MubSymbol &other) const {
        if (other.dim_ != dim_) {
            throw ShapeError("MubSymbol: dimension mismatch");
        }
        double m = 0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            m = std::max(m, std::abs(values_[i] - other.values_[i]));
        }
        return m;
    }

   private:
    std::size_t dim_;
    SymbolKind kind_;
    std::vector<Complex> values_;
};

namespace detail {

inline void require_square_dim(const ComplexMatrix &op, std::size_t d, const char *who) {
    if (op.rows() != d || op.cols() != d) {
        throw ShapeError(
            std::string(who) + ": operator is " + std::to_string(op.rows()) + "x" + std::to_string(op.cols()) +
            ", scheme dimension is " + std::to_string(d));
    }
}

inline std::vector<Complex> traces_against(const ComplexMatrix &op, const std::vector<ComplexMatrix> &ops) {
    std::vector<Complex> out;
    out.reserve(ops.size());
    for (const auto &u : ops) {
        out.push_back(trace_of_product(op, u));
    }
    return out;
}

inline ComplexMatrix weighted_sum(std::span<const Complex> f, const std::vector<ComplexMatrix> &ops, std::size_t d) {
    if (f.size() != ops.size()) {
        throw ShapeError("weighted_sum: symbol length does not match the scheme");
    }
    ComplexMatrix out(d, d);
    for (std::size_t x = 0; x < ops.size(); ++x) {
        out.add_scaled(f[x], ops[x]);
    }
    return out;
}

}  // namespace detail

/// Generic-scheme symbol f(x) = Tr[A U(x)].
inline std::vector<Complex> scheme_symbol(const ComplexMatrix &op, const SchemePair &s) {
    detail::require_square_dim(op, s.dim, "scheme_symbol");
    return detail::traces_against(op, s.dequantizers);
}

/// Generic-scheme dual symbol f^d(x) = Tr[A D(x)].
inline std::vector<Complex> scheme_dual_symbol(const ComplexMatrix &op, const SchemePair &s) {
    detail::require_square_dim(op, s.dim, "scheme_dual_symbol");
    return detail::traces_against(op, s.quantizers);
}

/// f_A(a, α) = Tr[A Π_{aα}].
inline MubSymbol symbol(const ComplexMatrix &op, const SchemePair &s) {
    return MubSymbol(s.dim, scheme_symbol(op, s), SymbolKind::Ordinary);
}

/// f^d_A(a, α) = Tr[A D_{aα}].
inline MubSymbol dual_symbol(const ComplexMatrix &op, const SchemePair &s) {
    return MubSymbol(s.dim, scheme_dual_symbol(op, s), SymbolKind::Dual);
}

/// Inverts `symbol` or `dual_symbol` depending on the symbol's kind:
/// A = Σ f(x) D(x) for ordinary symbols, A = Σ f^d(x) U(x) for dual ones.
inline ComplexMatrix operator_from_symbol(const MubSymbol &sym, const SchemePair &s) {
    if (sym.dim() != s.dim) {
        throw ShapeError("operator_from_symbol: dimension mismatch");
    }
    const auto &ops = sym.kind() == SymbolKind::Ordinary ? s.quantizers : s.dequantizers;
    return detail::weighted_sum(sym.values(), ops, s.dim);
}

/// 𝔇(aα; bβ) = 1/(d(d+1)) + δ_ab(δ_αβ − 1/d), cross-checked entrywise against
/// Tr[D_{aα} U_{bβ}].
inline Eigen::MatrixXd delta_function(const SchemePair &s, double cross_check_tol = 1e-10) {
    const std::size_t d = s.dim;
    const std::size_t n = s.size();
    if (n != grid_size(d)) {
        throw ShapeError("delta_function: not a MUB scheme");
    }
    const double dd = static_cast<double>(d);
    Eigen::MatrixXd out(n, n);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = 0; y < n; ++y) {
            auto ix = MubIndex::from_composite(x, d);
            auto iy = MubIndex::from_composite(y, d);
            double v = 1.0 / (dd * (dd + 1));
            if (ix.a == iy.a) {
                v += (ix.alpha == iy.alpha ? 1.0 : 0.0) - 1.0 / dd;
            }
            Complex traced = trace_of_product(s.quantizers[x], s.dequantizers[y]);
            if (std::abs(traced - v) > cross_check_tol) {
                throw ConsistencyError(
                    "delta_function: closed form and Tr[D U] disagree at (" + std::to_string(x) + ", " +
                    std::to_string(y) + ")");
            }
            out(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y)) = v;
        }
    }
    return out;
}

/// Dense n×n×n complex tensor over composite indices.
class Tensor3 {
   public:
    Tensor3() = default;
    explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {
    }

    std::size_t extent() const {
        return n_;
    }
    Complex &operator()(std::size_t i, std::size_t j, std::size_t k) {
        return data_[(i * n_ + j) * n_ + k];
    }
    const Complex &operator()(std::size_t i, std::size_t j, std::size_t k) const {
        return data_[(i * n_ + j) * n_ + k];
    }
    std::span<const Complex> data() const {
        return data_;
    }
    std::span<Complex> data() {
        return data_;
    }

   private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// T_{x1,x2,x3} = Tr[Π_{x1} Π_{x2} Π_{x3}].
struct TripleProductTensor {
    std::size_t dim = 0;
    Tensor3 t;

    const Complex &operator()(std::size_t x1, std::size_t x2, std::size_t x3) const {
        return t(x1, x2, x3);
    }
};

struct KernelTensor {
    std::size_t dim = 0;
    KernelKind kind = KernelKind::Ordinary;
    Tensor3 k;

    const Complex &operator()(std::size_t x1, std::size_t x2, std::size_t x) const {
        return k(x1, x2, x);
    }
};

namespace detail {

/// out(i, j, k) = Tr[A_i B_j C_k], via the pair product A_i B_j.
inline Tensor3 triple_traces(
    const std::vector<ComplexMatrix> &as, const std::vector<ComplexMatrix> &bs, const std::vector<ComplexMatrix> &cs) {
    const std::size_t n = as.size();
    Tensor3 out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            ComplexMatrix ab = matmul(as[i], bs[j]);
            for (std::size_t k = 0; k < n; ++k) {
                out(i, j, k) = trace_of_product(ab, cs[k]);
            }
        }
    }
    return out;
}

inline double kronecker(std::size_t i, std::size_t j) {
    return i == j ? 1.0 : 0.0;
}

}  // namespace detail

inline TripleProductTensor triple_products(const ProjectorSet &proj) {
    return {proj.dim(), detail::triple_traces(proj.all(), proj.all(), proj.all())};
}

inline TripleProductTensor triple_products(const MubSet &set) {
    return triple_products(projectors(set));
}

/// Kernel from the triple product:
///   ordinary K = T + (δ_ac + δ_bc)/(d(d+1)) − (δ_ac δ_αγ + δ_bc δ_βγ)/(d+1) − (d+2)/(d(d+1)²)
///   dual     K = T − overlap(aα, bβ)/(d+1)
inline KernelTensor kernel_from_triple_products(const TripleProductTensor &t, KernelKind kind) {
    const std::size_t d = t.dim;
    const std::size_t n = grid_size(d);
    const double dd = static_cast<double>(d);
    const double d1 = dd + 1;
    KernelTensor out{d, kind, Tensor3(n)};
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        auto i1 = MubIndex::from_composite(x1, d);
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            auto i2 = MubIndex::from_composite(x2, d);
            for (std::size_t x3 = 0; x3 < n; ++x3) {
                auto i3 = MubIndex::from_composite(x3, d);
                Complex v = t(x1, x2, x3);
                if (kind == KernelKind::Ordinary) {
                    double dac = detail::kronecker(i1.a, i3.a);
                    double dbc = detail::kronecker(i2.a, i3.a);
                    v += (dac + dbc) / (dd * d1);
                    v -= (dac * detail::kronecker(i1.alpha, i3.alpha) + dbc * detail::kronecker(i2.alpha, i3.alpha)) /
                         d1;
                    v -= (dd + 2) / (dd * d1 * d1);
                } else {
                    v -= mub_overlap(d, i1, i2) / d1;
                }
                out.k(x1, x2, x3) = v;
            }
        }
    }
    return out;
}

/// Kernel by direct traces: Tr[D D U] (ordinary) or Tr[U U D] (dual).
inline KernelTensor kernel_from_traces(const SchemePair &s, KernelKind kind) {
    if (kind == KernelKind::Ordinary) {
        return {s.dim, kind, detail::triple_traces(s.quantizers, s.quantizers, s.dequantizers)};
    }
    return {s.dim, kind, detail::triple_traces(s.dequantizers, s.dequantizers, s.quantizers)};
}

inline CheckResult compare_kernels(const KernelTensor &a, const KernelTensor &b, double tol) {
    CheckResult r(std::string("kernel_cross_check_") + to_string(a.kind), tol);
    const std::size_t n = a.k.extent();
    if (b.k.extent() != n) {
        throw ShapeError("compare_kernels: extent mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                r.record(std::abs(a.k(i, j, k) - b.k(i, j, k)), {i, j, k});
            }
        }
    }
    return r;
}

/// Star-product kernel built from the triple-product formula and verified
/// entrywise against the direct trace route. Throws ConsistencyError if the
/// two routes differ by more than `cross_check_tol`.
inline KernelTensor kernel(const MubSet &set, KernelKind kind, double cross_check_tol = 1e-10) {
    KernelTensor formula = kernel_from_triple_products(triple_products(set), kind);
    KernelTensor traced = kernel_from_traces(scheme(set), kind);
    CheckResult cmp = compare_kernels(formula, traced, cross_check_tol);
    if (!cmp.passed()) {
        throw ConsistencyError(
            std::string("kernel: ") + to_string(kind) + " formula and trace routes differ by " +
            std::to_string(cmp.max_violation));
    }
    return formula;
}

/// (f ⋆ g)(x) = Σ_{x1,x2} f(x1) g(x2) K(x1, x2, x).
inline MubSymbol star_multiply(const MubSymbol &fa, const MubSymbol &fb, const KernelTensor &k) {
    if (fa.dim() != k.dim || fb.dim() != k.dim) {
        throw ShapeError("star_multiply: symbol and kernel dimensions differ");
    }
    if (fa.kind() != k.kind || fb.kind() != k.kind) {
        throw ShapeError("star_multiply: symbol kind does not match kernel kind");
    }
    const std::size_t n = k.k.extent();
    std::vector<Complex> out(n);
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            const Complex w = fa[x1] * fb[x2];
            for (std::size_t x = 0; x < n; ++x) {
                out[x] += w * k.k(x1, x2, x);
            }
        }
    }
    return MubSymbol(k.dim, std::move(out), k.kind);
}

namespace detail {

/// Visits 4-tuples over [0, n)⁴, exhaustively or by seeded sampling.
template <typename Fn>
void sweep4(std::size_t d, std::size_t n, const SweepOptions &opts, CheckResult &result, Fn &&fn) {
    if (opts.exhaustive_for(d)) {
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                for (std::size_t c = 0; c < n; ++c) {
                    for (std::size_t e = 0; e < n; ++e) {
                        fn(a, b, c, e);
                    }
                }
            }
        }
        return;
    }
    result.sampled = true;
    SplitMix64 rng(opts.seed);
    for (std::size_t s = 0; s < opts.samples; ++s) {
        std::size_t a = rng.index(n);
        std::size_t b = rng.index(n);
        std::size_t c = rng.index(n);
        std::size_t e = rng.index(n);
        fn(a, b, c, e);
    }
}

}  // namespace detail

/// Σ_y K(x1,x2,y) K(y,x3,x) versus Σ_y K(x1,y,x) K(x2,x3,y).
inline CheckResult check_kernel_associativity(const KernelTensor &k, const SweepOptions &opts = {}) {
    CheckResult r(std::string("associativity_") + to_string(k.kind), opts.tolerance);
    const std::size_t n = k.k.extent();
    detail::sweep4(k.dim, n, opts, r, [&](std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x) {
        Complex lhs = 0;
        Complex rhs = 0;
        for (std::size_t y = 0; y < n; ++y) {
            lhs += k.k(x1, x2, y) * k.k(y, x3, x);
            rhs += k.k(x1, y, x) * k.k(x2, x3, y);
        }
        r.record(std::abs(lhs - rhs), {x1, x2, x3, x});
    });
    return r;
}

/// Σ_c (T_{a,b,c} T_{c,k,l} − T_{a,c,l} T_{b,k,c}) = ov(a,b) ov(k,l) − ov(a,l) ov(b,k),
/// ov being the projector overlap Tr[Π Π].
inline CheckResult check_triple_product_relation(const TripleProductTensor &t, const SweepOptions &opts = {}) {
    CheckResult r("triple_product_relation", opts.tolerance);
    const std::size_t d = t.dim;
    const std::size_t n = t.t.extent();
    detail::sweep4(d, n, opts, r, [&](std::size_t a, std::size_t b, std::size_t k, std::size_t l) {
        Complex lhs = 0;
        for (std::size_t c = 0; c < n; ++c) {
            lhs += t(a, b, c) * t(c, k, l) - t(a, c, l) * t(b, k, c);
        }
        double rhs = mub_overlap(d, a, b) * mub_overlap(d, k, l) - mub_overlap(d, a, l) * mub_overlap(d, b, k);
        r.record(std::abs(lhs - rhs), {a, b, k, l});
    });
    return r;
}

/// Tr[Π1 Π2 Π3 Π4] = Σ_c T_{x1,x2,c} T_{c,x3,x4} − ov(x1,x2) ov(x3,x4).
inline Complex four_product(const TripleProductTensor &t, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4) {
    const std::size_t n = t.t.extent();
    if (x1 >= n || x2 >= n || x3 >= n || x4 >= n) {
        throw ShapeError("four_product: index out of range");
    }
    Complex s = 0;
    for (std::size_t c = 0; c < n; ++c) {
        s += t(x1, x2, c) * t(c, x3, x4);
    }
    return s - mub_overlap(t.dim, x1, x2) * mub_overlap(t.dim, x3, x4);
}

inline Complex direct_four_product(
    const ProjectorSet &proj, std::size_t x1, std::size_t x2, std::size_t x3, std::size_t x4) {
    return trace_of_product(matmul(proj[x1], proj[x2]), matmul(proj[x3], proj[x4]));
}

inline CheckResult check_four_product(
    const TripleProductTensor &t, const ProjectorSet &proj, const SweepOptions &opts = {}) {
    CheckResult r("four_product", opts.tolerance);
    detail::sweep4(t.dim, t.t.extent(), opts, r, [&](std::size_t a, std::size_t b, std::size_t c, std::size_t e) {
        r.record(std::abs(four_product(t, a, b, c, e) - direct_four_product(proj, a, b, c, e)), {a, b, c, e});
    });
    return r;
}

/// Real J with T_{x1,x2,x3} − T_{x2,x1,x3} = i J_{x1,x2,x3}.
struct StructureConstants {
    std::size_t dim = 0;
    std::size_t extent = 0;
    std::vector<double> j;

    double operator()(std::size_t x1, std::size_t x2, std::size_t x3) const {
        return j[(x1 * extent + x2) * extent + x3];
    }
};

inline StructureConstants structure_constants(const TripleProductTensor &t, double real_part_tol = 1e-12) {
    const std::size_t n = t.t.extent();
    StructureConstants out{t.dim, n, std::vector<double>(n * n * n)};
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            for (std::size_t x3 = 0; x3 < n; ++x3) {
                Complex diff = t(x1, x2, x3) - t(x2, x1, x3);
                if (std::abs(diff.real()) > real_part_tol) {
                    throw ConsistencyError(
                        "structure_constants: T(x1,x2,x3) - T(x2,x1,x3) has real part " +
                        std::to_string(diff.real()) + " at (" + std::to_string(x1) + ", " + std::to_string(x2) +
                        ", " + std::to_string(x3) + ")");
                }
                out.j[(x1 * n + x2) * n + x3] = diff.imag();
            }
        }
    }
    return out;
}

/// Antisymmetry J_{x1,x2,x3} = −J_{x2,x1,x3}.
inline CheckResult check_antisymmetry(const StructureConstants &j, double tol = 1e-12) {
    CheckResult r("structure_constants_antisymmetry", tol);
    const std::size_t n = j.extent;
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            for (std::size_t x3 = 0; x3 < n; ++x3) {
                r.record(std::abs(j(x1, x2, x3) + j(x2, x1, x3)), {x1, x2, x3});
            }
        }
    }
    return r;
}

/// Σ_γ J_{x1,x2,(c,γ)} = 0 for every x1, x2, c.
inline CheckResult check_gamma_sums(const StructureConstants &j, double tol = 1e-12) {
    CheckResult r("structure_constants_gamma_sum", tol);
    const std::size_t d = j.dim;
    const std::size_t n = j.extent;
    for (std::size_t x1 = 0; x1 < n; ++x1) {
        for (std::size_t x2 = 0; x2 < n; ++x2) {
            for (std::size_t c = 0; c <= d; ++c) {
                double s = 0;
                for (std::size_t gamma = 0; gamma < d; ++gamma) {
                    s += j(x1, x2, c * d + gamma);
                }
                r.record(std::abs(s), {x1, x2, c});
            }
        }
    }
    return r;
}

struct LieClosureReport {
    CheckResult commutator{"lie_closure", 1e-12};
    CheckResult povm{"lie_closure_povm", 1e-12};

    bool passed() const {
        return commutator.passed() && povm.passed();
    }
};

/// [Π_{x1}, Π_{x2}] = Σ_c i J_{x1,x2,c} Π_c and
/// [E_{x1}, E_{x2}] = (d+1)^{-1} Σ_c i J_{x1,x2,c} E_c, entrywise.
/// Pairs are exhaustive unless opts.mode is Sampled.
inline LieClosureReport check_lie_closure(const MubSet &set, const StructureConstants &j, const SweepOptions &opts = {}) {
    const std::size_t d = set.dim();
    const std::size_t n = set.size();
    if (j.dim != d || j.extent != n) {
        throw ShapeError("check_lie_closure: structure constants do not match the MUB set");
    }
    const ProjectorSet proj = projectors(set);
    const MubPovm effects = povm(set);
    const Complex i(0, 1);
    const Complex povm_scale = 1.0 / static_cast<double>(d + 1);
    LieClosureReport rep;
    rep.commutator.tolerance = opts.tolerance;
    rep.povm.tolerance = opts.tolerance;

    auto visit = [&](std::size_t x1, std::size_t x2) {
        ComplexMatrix expansion(d, d);
        ComplexMatrix povm_expansion(d, d);
        for (std::size_t c = 0; c < n; ++c) {
            const double jc = j(x1, x2, c);
            if (jc != 0) {
                expansion.add_scaled(i * jc, proj[c]);
                povm_expansion.add_scaled(povm_scale * i * jc, effects.effects[c]);
            }
        }
        rep.commutator.record(max_abs_diff(commutator(proj[x1], proj[x2]), expansion), {x1, x2});
        rep.povm.record(max_abs_diff(commutator(effects.effects[x1], effects.effects[x2]), povm_expansion), {x1, x2});
    };

    if (opts.mode == SweepMode::Sampled) {
        rep.commutator.sampled = rep.povm.sampled = true;
        SplitMix64 rng(opts.seed);
        for (std::size_t s = 0; s < opts.samples; ++s) {
            std::size_t x1 = rng.index(n);
            std::size_t x2 = rng.index(n);
            visit(x1, x2);
        }
    } else {
        for (std::size_t x1 = 0; x1 < n; ++x1) {
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                visit(x1, x2);
            }
        }
    }
    return rep;
}

/// Jacobi identity of the algebra defined by J: the operator
/// Σ_z w_z Π_z with w = [[x1,x2],x3] + [[x2,x3],x1] + [[x3,x1],x2] expanded
/// through J twice must vanish.
inline CheckResult check_jacobi(const ProjectorSet &proj, const StructureConstants &j, const SweepOptions &opts = {}) {
    CheckResult r("jacobi", opts.tolerance);
    const std::size_t d = proj.dim();
    const std::size_t n = proj.size();
    std::vector<double> w(n);
    auto nested = [&](std::size_t p, std::size_t q, std::size_t s) {
        // [[Π_p, Π_q], Π_s] = Σ_y iJ_{pqy} Σ_z iJ_{ysz} Π_z
        for (std::size_t y = 0; y < n; ++y) {
            const double jy = j(p, q, y);
            if (jy == 0) {
                continue;
            }
            for (std::size_t z = 0; z < n; ++z) {
                w[z] -= jy * j(y, s, z);
            }
        }
    };
    auto visit = [&](std::size_t x1, std::size_t x2, std::size_t x3) {
        std::fill(w.begin(), w.end(), 0.0);
        nested(x1, x2, x3);
        nested(x2, x3, x1);
        nested(x3, x1, x2);
        ComplexMatrix m(d, d);
        for (std::size_t z = 0; z < n; ++z) {
            m.add_scaled(w[z], proj[z]);
        }
        r.record(max_abs(m), {x1, x2, x3});
    };
    if (opts.exhaustive_for(d)) {
        for (std::size_t x1 = 0; x1 < n; ++x1) {
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                for (std::size_t x3 = 0; x3 < n; ++x3) {
                    visit(x1, x2, x3);
                }
            }
        }
    } else {
        r.sampled = true;
        SplitMix64 rng(opts.seed);
        for (std::size_t s = 0; s < opts.samples; ++s) {
            std::size_t x1 = rng.index(n);
            std::size_t x2 = rng.index(n);
            std::size_t x3 = rng.index(n);
            visit(x1, x2, x3);
        }
    }
    return r;
}

/// K(ξ, x) = Tr[D_from(ξ) U_to(x)]: transports symbols of scheme `from` into
/// symbols of scheme `to` via f_to(x) = Σ_ξ f_from(ξ) K(ξ, x).
inline ComplexMatrix intertwining_kernel(const SchemePair &from, const SchemePair &to) {
    if (from.dim != to.dim) {
        throw ShapeError(
            "intertwining_kernel: schemes act on dimensions " + std::to_string(from.dim) + " and " +
            std::to_string(to.dim));
    }
    ComplexMatrix k(from.size(), to.size());
    for (std::size_t xi = 0; xi < from.size(); ++xi) {
        for (std::size_t x = 0; x < to.size(); ++x) {
            k(xi, x) = trace_of_product(from.quantizers[xi], to.dequantizers[x]);
        }
    }
    return k;
}

inline std::vector<Complex> transport(std::span<const Complex> f, const ComplexMatrix &k) {
    if (f.size() != k.rows()) {
        throw ShapeError("transport: symbol length does not match the kernel");
    }
    std::vector<Complex> out(k.cols());
    for (std::size_t xi = 0; xi < k.rows(); ++xi) {
        for (std::size_t x = 0; x < k.cols(); ++x) {
            out[x] += f[xi] * k(xi, x);
        }
    }
    return out;
}

}  // namespace mubtomo

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

#include <cstdint>
#include <string>
#include <vector>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/qubit_sic.hpp"
#include "mubtomo/random.hpp"
#include "mubtomo/report.hpp"
#include "mubtomo/starprod.hpp"
#include "mubtomo/tomography.hpp"

namespace mubtomo {

enum class VerifyLevel { Quick, Exhaustive };

struct VerifyOptions {
    std::size_t dim = 2;
    VerifyLevel level = VerifyLevel::Quick;
    std::uint64_t seed = 0;
    std::size_t samples = 10000;
    std::size_t random_operators = 20;
    /// Adds 0.1 to one ordinary-kernel entry before the kernel checks run.
    bool inject_fault = false;
};

struct VerificationReport {
    std::size_t dim = 0;
    VerifyLevel level = VerifyLevel::Quick;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<CheckResult> checks;

    bool passed() const {
        for (const auto &c : checks) {
            if (!c.passed()) {
                return false;
            }
        }
        return true;
    }
};

/// Position of the entry perturbed by VerifyOptions::inject_fault.
inline constexpr std::size_t kFaultEntry[3] = {0, 1, 2};

/// Runs the whole identity suite for one dimension: MUB validity, projector
/// relations, reconstruction routes, kernel routes and the kernel property,
/// associativity, the triple/four-product relations, the Lie structure, and for
/// d = 2 the qubit closed forms and the SIC intertwining.
inline VerificationReport run_verification(const VerifyOptions &opts) {
    const std::size_t d = opts.dim;
    const MubSet set = construct_mub(d);
    const ProjectorSet proj = projectors(set);
    const SchemePair sch = scheme(set);
    const std::size_t n = set.size();

    VerificationReport rep{d, opts.level, opts.seed, opts.samples, {}};
    auto add = [&](CheckResult r) { rep.checks.push_back(std::move(r)); };

    SweepOptions sweep;
    sweep.mode = opts.level == VerifyLevel::Exhaustive ? SweepMode::Exhaustive : SweepMode::Auto;
    sweep.samples = opts.samples;
    sweep.seed = opts.seed;

    // MUB family and projectors.
    MubValidation valid = validate_mub(set, 1e-12);
    add(valid.orthonormality);
    add(valid.unbiasedness);
    {
        CheckResult r("projector_trace_relation", 1e-12);
        for (std::size_t x = 0; x < n; ++x) {
            for (std::size_t y = 0; y < n; ++y) {
                r.record(std::abs(trace_of_product(proj[x], proj[y]) - mub_overlap(d, x, y)), {x, y});
            }
        }
        add(r);
    }
    {
        CheckResult r("projector_sum_rules", 1e-12);
        ComplexMatrix total(d, d);
        const ComplexMatrix id = ComplexMatrix::identity(d);
        for (std::size_t a = 0; a <= d; ++a) {
            ComplexMatrix row(d, d);
            for (std::size_t alpha = 0; alpha < d; ++alpha) {
                row += proj(a, alpha);
            }
            r.record(max_abs_diff(row, id), {a});
            total += row;
        }
        r.record(max_abs_diff(total, id * Complex(static_cast<double>(d + 1))), {d + 1});
        add(r);
    }
    {
        CheckResult r("spanning_rank", 0);
        r.record(std::abs(static_cast<double>(spanning_rank(proj)) - static_cast<double>(d * d)), {});
        add(r);
    }

    // Reconstruction and its coefficient routes.
    {
        CheckResult roundtrip("reconstruction_roundtrip", 1e-10);
        CheckResult routes("coefficient_routes", 1e-12);
        CheckResult closure("delta_function_reproduction", 1e-10);
        SplitMix64 rng = SplitMix64::substream(opts.seed, 1);
        const Eigen::MatrixXd delta = delta_function(sch);
        for (std::size_t s = 0; s < opts.random_operators; ++s) {
            DensityMatrix rho = random_density_matrix(d, rng);
            Tomogram t = scan(rho, set);
            ComplexMatrix direct = reconstruct(t, set).rho;
            roundtrip.record(max_abs_diff(direct, rho.matrix()), {s});
            double dev = std::max(
                max_abs_diff(state_from_coefficients(coefficients_from_tomogram(t), set), direct),
                max_abs_diff(state_from_coefficients(solve_coefficients_linear(t), set), direct));
            routes.record(dev, {s});

            MubSymbol f = symbol(random_operator(d, rng), sch);
            double worst = 0;
            for (std::size_t x = 0; x < n; ++x) {
                Complex acc = 0;
                for (std::size_t x1 = 0; x1 < n; ++x1) {
                    acc += delta(static_cast<Eigen::Index>(x1), static_cast<Eigen::Index>(x)) * f[x1];
                }
                worst = std::max(worst, std::abs(acc - f[x]));
            }
            closure.record(worst, {s});
        }
        add(roundtrip);
        add(routes);
        add(closure);
    }

    // Triple products and kernels.
    const TripleProductTensor t = triple_products(proj);
    {
        CheckResult r("triple_product_symmetry", 1e-12);
        for (std::size_t x1 = 0; x1 < n; ++x1) {
            for (std::size_t x2 = 0; x2 < n; ++x2) {
                for (std::size_t x3 = 0; x3 < n; ++x3) {
                    double v = std::max(
                        std::abs(t(x1, x2, x3) - t(x2, x3, x1)), std::abs(t(x1, x2, x3) - std::conj(t(x2, x1, x3))));
                    r.record(v, {x1, x2, x3});
                }
            }
        }
        add(r);
    }
    for (KernelKind kind : {KernelKind::Ordinary, KernelKind::Dual}) {
        KernelTensor k = kernel_from_triple_products(t, kind);
        if (opts.inject_fault && kind == KernelKind::Ordinary) {
            k.k(kFaultEntry[0], kFaultEntry[1], kFaultEntry[2]) += 0.1;
        }
        add(compare_kernels(k, kernel_from_traces(sch, kind), 1e-10));

        CheckResult prod(std::string("star_product_") + to_string(kind), 1e-10);
        SplitMix64 rng = SplitMix64::substream(opts.seed, kind == KernelKind::Ordinary ? 2 : 3);
        for (std::size_t s = 0; s < opts.random_operators; ++s) {
            ComplexMatrix a = random_operator(d, rng);
            ComplexMatrix b = random_operator(d, rng);
            auto to_symbol = [&](const ComplexMatrix &m) {
                return kind == KernelKind::Ordinary ? symbol(m, sch) : dual_symbol(m, sch);
            };
            prod.record(star_multiply(to_symbol(a), to_symbol(b), k).max_abs_diff(to_symbol(matmul(a, b))), {s});
        }
        add(prod);
        add(check_kernel_associativity(k, sweep));
    }
    add(check_triple_product_relation(t, sweep));
    {
        SweepOptions four = sweep;
        four.tolerance = 1e-10;
        add(check_four_product(t, proj, four));
    }

    // Lie structure.
    const StructureConstants j = structure_constants(t);
    add(check_antisymmetry(j));
    add(check_gamma_sums(j));
    {
        SweepOptions pairs = sweep;
        if (opts.level == VerifyLevel::Exhaustive || n * n <= opts.samples) {
            pairs.mode = SweepMode::Exhaustive;
        }
        LieClosureReport lie = check_lie_closure(set, j, pairs);
        add(lie.commutator);
        add(lie.povm);
    }
    {
        SweepOptions triples = sweep;
        triples.tolerance = 1e-10;
        add(check_jacobi(proj, j, triples));
    }

    if (d == 2) {
        using namespace qubit;
        {
            CheckResult r("qubit_projectors", 1e-15);
            ProjectorSet closed = qubit_mub_projectors();
            for (std::size_t x = 0; x < n; ++x) {
                r.record(max_abs_diff(closed[x], proj[x]), {x});
            }
            add(r);
        }
        {
            CheckResult r("qubit_triple_product_closed_form", 1e-15);
            for (std::size_t x1 = 0; x1 < n; ++x1) {
                for (std::size_t x2 = 0; x2 < n; ++x2) {
                    for (std::size_t x3 = 0; x3 < n; ++x3) {
                        Complex closed = triple_product_closed_form(
                            MubIndex::from_composite(x1, 2), MubIndex::from_composite(x2, 2),
                            MubIndex::from_composite(x3, 2));
                        r.record(std::abs(closed - t(x1, x2, x3)), {x1, x2, x3});
                    }
                }
            }
            add(r);
        }
        {
            CheckResult r("qubit_delta_function_closed_form", 1e-15);
            const Eigen::MatrixXd delta = delta_function(sch);
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t y = 0; y < n; ++y) {
                    double closed = delta_function_closed_form(MubIndex::from_composite(x, 2), MubIndex::from_composite(y, 2));
                    r.record(std::abs(closed - delta(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y))), {x, y});
                }
            }
            add(r);
        }
        const QubitSic sic;
        const SchemePair sic_scheme_pair = sic.as_scheme();
        {
            CheckResult r("sic_to_mub_kernel", 1e-12);
            ComplexMatrix generic = intertwining_kernel(sic_scheme_pair, sch);
            ComplexMatrix closed = sic_to_mub_kernel();
            for (std::size_t k = 0; k < 4; ++k) {
                for (std::size_t x = 0; x < n; ++x) {
                    r.record(std::abs(generic(k, x) - closed(k, x)), {k, x});
                }
            }
            add(r);
        }
        {
            CheckResult r("mub_to_sic_kernel", 1e-12);
            ComplexMatrix generic = intertwining_kernel(sch, sic_scheme_pair);
            ComplexMatrix closed = mub_to_sic_kernel();
            for (std::size_t x = 0; x < n; ++x) {
                for (std::size_t k = 0; k < 4; ++k) {
                    r.record(std::abs(generic(x, k) - closed(x, k)), {x, k});
                }
            }
            add(r);
        }
        {
            CheckResult r("sign_table_geometry", 0);
            for (std::size_t k = 0; k < 4; ++k) {
                for (std::size_t x = 0; x < n; ++x) {
                    auto ix = MubIndex::from_composite(x, 2);
                    double geometric = (sic.directions()[k][ix.a] > 0 ? 1.0 : -1.0) * alpha_sign(ix.alpha);
                    r.record(std::abs(geometric - sign_function(k + 1, ix.a, ix.alpha)), {k, x});
                }
            }
            add(r);
        }
        {
            CheckResult r("intertwining_roundtrip", 1e-12);
            // Spanning set: the four SIC projectors and the six MUB projectors.
            std::vector<ComplexMatrix> ops(sic.projectors().begin(), sic.projectors().end());
            ops.insert(ops.end(), proj.all().begin(), proj.all().end());
            for (std::size_t s = 0; s < ops.size(); ++s) {
                MubSymbol f = symbol(ops[s], sch);
                SicSymbol g = sic.symbol(ops[s]);
                double v = intertwine_sic_to_mub(g).max_abs_diff(f);
                SicSymbol back = intertwine_mub_to_sic(f);
                for (std::size_t k = 0; k < 4; ++k) {
                    v = std::max(v, std::abs(back[k] - g[k]));
                }
                r.record(v, {s});
            }
            add(r);
        }
    }
    return rep;
}

}  // namespace mubtomo

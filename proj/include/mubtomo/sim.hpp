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
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "mubtomo/core.hpp"
#include "mubtomo/mub.hpp"
#include "mubtomo/random.hpp"
#include "mubtomo/report.hpp"
#include "mubtomo/tomography.hpp"

namespace mubtomo {

/// Outcome counts of N shots in each of the d+1 bases.
struct MeasurementRecord {
    std::size_t dim = 0;
    std::uint64_t shots_per_basis = 0;
    std::vector<std::uint64_t> counts;  // composite index a·d + α
    std::uint64_t seed = 0;

    std::uint64_t operator()(std::size_t a, std::size_t alpha) const {
        return counts.at(a * dim + alpha);
    }

    /// Throws ShapeError unless every basis row sums to shots_per_basis.
    void validate() const {
        if (dim == 0 || counts.size() != grid_size(dim)) {
            throw ShapeError("MeasurementRecord: expected d(d+1) counts");
        }
        if (shots_per_basis == 0) {
            throw ShapeError("MeasurementRecord: shots_per_basis must be positive");
        }
        for (std::size_t a = 0; a <= dim; ++a) {
            std::uint64_t row = 0;
            for (std::size_t alpha = 0; alpha < dim; ++alpha) {
                row += (*this)(a, alpha);
            }
            if (row != shots_per_basis) {
                throw ShapeError(
                    "MeasurementRecord: basis " + std::to_string(a) + " has " + std::to_string(row) +
                    " counts, expected " + std::to_string(shots_per_basis));
            }
        }
    }

    bool operator==(const MeasurementRecord &) const = default;
};

/// Multinomial sampling of each basis independently. Basis a draws from the
/// SplitMix64 substream (seed, a), one uniform per shot, inverse-CDF over α.
inline MeasurementRecord sample(
    const DensityMatrix &state, const MubSet &set, std::uint64_t shots, std::uint64_t seed) {
    if (shots == 0) {
        throw ShapeError("sample: shots must be positive");
    }
    const Tomogram born = scan(state, set);
    const std::size_t d = set.dim();
    MeasurementRecord rec{d, shots, std::vector<std::uint64_t>(set.size()), seed};
    std::vector<double> cdf(d);
    for (std::size_t a = 0; a <= d; ++a) {
        double total = 0;
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            double p = born(a, alpha);
            if (p < -1e-10) {
                throw ValidityError("sample: negative Born probability " + std::to_string(p));
            }
            total += std::max(p, 0.0);
            cdf[alpha] = total;
        }
        if (std::abs(total - 1.0) > 1e-10) {
            throw ValidityError("sample: Born probabilities of basis " + std::to_string(a) + " sum to " +
                                std::to_string(total));
        }
        for (auto &c : cdf) {
            c /= total;
        }
        SplitMix64 rng = SplitMix64::substream(seed, a);
        std::uint64_t *row = &rec.counts[a * d];
        for (std::uint64_t s = 0; s < shots; ++s) {
            const double u = rng.uniform();
            std::size_t alpha = 0;
            while (alpha + 1 < d && u >= cdf[alpha]) {
                ++alpha;
            }
            ++row[alpha];
        }
    }
    return rec;
}

/// p̂_{aα} = counts_{aα} / N.
inline Tomogram frequencies(const MeasurementRecord &rec) {
    rec.validate();
    std::vector<double> p(rec.counts.size());
    const double n = static_cast<double>(rec.shots_per_basis);
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = static_cast<double>(rec.counts[i]) / n;
    }
    return Tomogram(rec.dim, std::move(p));
}

enum class Repair { None, Project };

inline const char *to_string(Repair r) {
    return r == Repair::None ? "none" : "project";
}

/// Closest unit-trace PSD matrix by eigenvalue clipping at zero followed by
/// trace renormalization.
inline ComplexMatrix project_to_density(const ComplexMatrix &m, double tol_herm = Tolerances{}.herm) {
    auto eig = hermitian_eigensystem(m, tol_herm);
    const std::size_t d = m.rows();
    double total = 0;
    for (auto &v : eig.values) {
        v = std::max(v, 0.0);
        total += v;
    }
    if (!(total > 0)) {
        // Every eigenvalue clipped: fall back to the maximally mixed state.
        return ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d));
    }
    ComplexMatrix out(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const double w = eig.values[k] / total;
        if (w == 0) {
            continue;
        }
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                out(i, j) += w * (eig.vectors(i, k) * std::conj(eig.vectors(j, k)));
            }
        }
    }
    return out;
}

struct Estimate {
    ComplexMatrix rho;
    Repair repair = Repair::None;
    double min_eigenvalue_before_repair = 0;
    double trace_distance_moved = 0;
    bool normalization_warning = false;
};

inline Estimate estimate(const Tomogram &tom, const MubSet &set, Repair repair, const Tolerances &tol = {}) {
    Reconstruction rec = reconstruct(tom, set, tol);
    Estimate out;
    out.repair = repair;
    out.min_eigenvalue_before_repair = rec.min_eigenvalue;
    out.normalization_warning = rec.normalization_warning;
    if (repair == Repair::Project) {
        ComplexMatrix fixed = project_to_density(rec.rho, tol.herm);
        out.trace_distance_moved = trace_distance(rec.rho, fixed, tol.herm);
        out.rho = std::move(fixed);
    } else {
        out.rho = std::move(rec.rho);
    }
    return out;
}

/// Linear inversion of the empirical frequencies, optionally projected onto
/// the set of density matrices.
inline Estimate estimate(const MeasurementRecord &record, const MubSet &set, Repair repair, const Tolerances &tol = {}) {
    return estimate(frequencies(record), set, repair, tol);
}

/// Pre-measurement rotations u_a, one per basis, acting on the
/// spin-projection basis |j, m⟩ (computational index α ↔ m = α − j).
class SternGerlachConfig {
   public:
    SternGerlachConfig(std::size_t dim, std::vector<ComplexMatrix> unitaries, double tol = 1e-12)
        : dim_(dim), unitaries_(std::move(unitaries)) {
        if (unitaries_.size() != dim_ + 1) {
            throw ShapeError("SternGerlachConfig: need d+1 unitaries");
        }
        const ComplexMatrix id = ComplexMatrix::identity(dim_);
        for (std::size_t a = 0; a < unitaries_.size(); ++a) {
            const auto &u = unitaries_[a];
            if (u.rows() != dim_ || u.cols() != dim_) {
                throw ShapeError("SternGerlachConfig: unitary of wrong shape");
            }
            double defect = max_abs_diff(matmul(dagger(u), u), id);
            if (defect > tol) {
                throw ValidityError(
                    "SternGerlachConfig: u_" + std::to_string(a) + " is not unitary (defect " +
                    std::to_string(defect) + ")");
            }
        }
    }

    std::size_t dim() const {
        return dim_;
    }
    const std::vector<ComplexMatrix> &unitaries() const {
        return unitaries_;
    }

   private:
    std::size_t dim_;
    std::vector<ComplexMatrix> unitaries_;
};

/// |aα⟩ = u_a |j, m = α − j⟩, i.e. the columns of u_a. No unbiasedness check.
inline MubSet stern_gerlach_bases(const SternGerlachConfig &config) {
    const std::size_t d = config.dim();
    std::vector<std::vector<Ket>> bases;
    for (const auto &u : config.unitaries()) {
        std::vector<Ket> basis(d, Ket(d));
        for (std::size_t alpha = 0; alpha < d; ++alpha) {
            for (std::size_t k = 0; k < d; ++k) {
                basis[alpha][k] = u(k, alpha);
            }
        }
        bases.push_back(std::move(basis));
    }
    return MubSet(d, std::move(bases));
}

/// max over all pairs of ||⟨aα|bβ⟩|² − ((1/d)(1 − δ_ab) + δ_ab δ_αβ)|.
inline CheckResult check_mub_condition(const MubSet &candidate, double tol = 1e-12) {
    CheckResult r("mub_condition", tol);
    const std::size_t d = candidate.dim();
    for (std::size_t x = 0; x < candidate.size(); ++x) {
        for (std::size_t y = 0; y < candidate.size(); ++y) {
            double target = mub_overlap(d, x, y);
            r.record(std::abs(std::norm(inner(candidate.ket(x), candidate.ket(y))) - target), {x, y});
        }
    }
    return r;
}

/// Spin-j angular momentum operators in the basis m = −j..j (index m + j).
/// `two_j` = 2j.
struct SpinOperators {
    ComplexMatrix jy;
    ComplexMatrix jz;
};

inline SpinOperators spin_operators(std::size_t two_j) {
    const std::size_t d = two_j + 1;
    const double j = static_cast<double>(two_j) / 2;
    SpinOperators ops{ComplexMatrix(d, d), ComplexMatrix(d, d)};
    for (std::size_t k = 0; k < d; ++k) {
        const double m = static_cast<double>(k) - j;
        ops.jz(k, k) = m;
        if (k + 1 < d) {
            // ⟨m+1|J+|m⟩ = √(j(j+1) − m(m+1)); Jy = (J+ − J−)/(2i).
            const double c = std::sqrt(j * (j + 1) - m * (m + 1));
            ops.jy(k + 1, k) = Complex(0, -0.5 * c);
            ops.jy(k, k + 1) = Complex(0, 0.5 * c);
        }
    }
    return ops;
}

/// Wigner rotation D^j(φ, θ, ψ) = e^{−iφJz} e^{−iθJy} e^{−iψJz}.
inline ComplexMatrix spin_rotation(std::size_t two_j, double phi, double theta, double psi) {
    const SpinOperators ops = spin_operators(two_j);
    const std::size_t d = two_j + 1;
    auto eig = hermitian_eigensystem(ops.jy);
    ComplexMatrix ry(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        const Complex phase = std::polar(1.0, -theta * eig.values[k]);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t l = 0; l < d; ++l) {
                ry(i, l) += phase * eig.vectors(i, k) * std::conj(eig.vectors(l, k));
            }
        }
    }
    ComplexMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t l = 0; l < d; ++l) {
            out(i, l) = std::polar(1.0, -phi * ops.jz(i, i).real()) * ry(i, l) *
                        std::polar(1.0, -psi * ops.jz(l, l).real());
        }
    }
    return out;
}

/// Haar-random SU(2) element in the spin-j representation.
inline ComplexMatrix random_spin_rotation(std::size_t two_j, SplitMix64 &rng) {
    const double phi = 2 * std::numbers::pi * rng.uniform();
    const double theta = std::acos(1 - 2 * rng.uniform());
    const double psi = 2 * std::numbers::pi * rng.uniform();
    return spin_rotation(two_j, phi, theta, psi);
}

/// The qubit family: u_x maps |0⟩,|1⟩ to the σx eigenstates, u_y to the σy
/// eigenstates, u_z = I.
inline SternGerlachConfig qubit_stern_gerlach() {
    const double h = std::numbers::sqrt2 / 2;
    const Complex i(0, 1);
    ComplexMatrix ux{{h, h}, {h, -h}};
    ComplexMatrix uy{{h, h}, {h * i, -h * i}};
    return SternGerlachConfig(2, {ux, uy, ComplexMatrix::identity(2)});
}

struct SpinFamilySearch {
    std::size_t trials = 0;
    std::size_t families_found = 0;  // trials passing at `tol`
    double min_violation = 0;        // smallest worst-pair violation over all trials
    double tol = 0;
};

/// Draws `trials` families of d+1 Haar-random SU(2) rotations in spin j and
/// records how close any of them comes to satisfying the MUB condition. A
/// result with families_found == 0 means no SU(2) family was found; it is not
/// a proof that none exists.
inline SpinFamilySearch search_spin_families(std::size_t two_j, std::size_t trials, std::uint64_t seed, double tol = 1e-12) {
    const std::size_t d = two_j + 1;
    SpinFamilySearch out{trials, 0, std::numeric_limits<double>::infinity(), tol};
    for (std::size_t t = 0; t < trials; ++t) {
        SplitMix64 rng = SplitMix64::substream(seed, t);
        std::vector<ComplexMatrix> us;
        for (std::size_t a = 0; a <= d; ++a) {
            us.push_back(random_spin_rotation(two_j, rng));
        }
        CheckResult r = check_mub_condition(stern_gerlach_bases(SternGerlachConfig(d, std::move(us))), tol);
        out.min_violation = std::min(out.min_violation, r.max_violation);
        if (r.passed()) {
            ++out.families_found;
        }
    }
    return out;
}

}  // namespace mubtomo

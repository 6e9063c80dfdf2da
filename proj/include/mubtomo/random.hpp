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
#include <limits>
#include <numbers>

#include "mubtomo/core.hpp"

namespace mubtomo {

/// SplitMix64 (Steele, Lea, Flood 2014). Counter-based: the n-th output is a
/// fixed bijective mix of seed + n * golden_gamma, so every stream is fully
/// determined by its 64-bit starting state. All distributions below are built
/// from raw 64-bit outputs only, which keeps results identical across
/// standard-library implementations.
class SplitMix64 {
   public:
    using result_type = std::uint64_t;

    static constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {
    }

    /// Independent stream for (seed, stream_id), e.g. one per measurement basis.
    static SplitMix64 substream(std::uint64_t seed, std::uint64_t stream_id) {
        return SplitMix64(mix(seed ^ mix(stream_id + golden_gamma)));
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        state_ += golden_gamma;
        return mix(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n), Lemire's multiply-shift (bias < n / 2^64).
    std::size_t index(std::size_t n) {
        return static_cast<std::size_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
    }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = 1.0 - uniform();  // (0, 1]
        double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

   private:
    std::uint64_t state_;
};

/// Ginibre matrix: i.i.d. entries (N(0,1) + i N(0,1)) / √2.
inline ComplexMatrix random_operator(std::size_t d, SplitMix64 &rng) {
    ComplexMatrix m(d, d);
    for (auto &e : m.entries()) {
        double re = rng.normal();
        double im = rng.normal();
        e = Complex(re, im) * std::sqrt(0.5);
    }
    return m;
}

/// Random Hermitian operator (G + G†)/2.
inline ComplexMatrix random_hermitian(std::size_t d, SplitMix64 &rng) {
    ComplexMatrix g = random_operator(d, rng);
    return (g + dagger(g)) * Complex(0.5);
}

/// Full-rank random state G G† / Tr(G G†) (Hilbert-Schmidt measure).
inline DensityMatrix random_density_matrix(std::size_t d, SplitMix64 &rng) {
    ComplexMatrix g = random_operator(d, rng);
    ComplexMatrix r = matmul(g, dagger(g));
    double t = trace(r).real();
    r *= Complex(1.0 / t);
    // Enforce exact Hermiticity against rounding in the product.
    for (std::size_t i = 0; i < d; ++i) {
        r(i, i) = r(i, i).real();
        for (std::size_t j = i + 1; j < d; ++j) {
            r(j, i) = std::conj(r(i, j));
        }
    }
    return DensityMatrix(std::move(r));
}

inline UnitVector random_unit_vector(std::size_t d, SplitMix64 &rng) {
    std::vector<Complex> v(d);
    double n = 0;
    for (auto &c : v) {
        c = Complex(rng.normal(), rng.normal());
        n += std::norm(c);
    }
    for (auto &c : v) {
        c /= std::sqrt(n);
    }
    return UnitVector(std::move(v));
}

}  // namespace mubtomo

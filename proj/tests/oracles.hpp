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

// Independent reference computations for the tests. Nothing here calls into
// the library's linear algebra beyond the ComplexMatrix container.

#include <cmath>
#include <array>
#include <complex>
#include <vector>

#include "mubtomo/core.hpp"

namespace oracle {

using mubtomo::Complex;
using mubtomo::ComplexMatrix;

inline ComplexMatrix naive_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0;
            for (std::size_t k = 0; k < a.cols(); ++k) {
                s += a(i, k) * b(k, j);
            }
            out(i, j) = s;
        }
    }
    return out;
}

inline Complex naive_trace(const ComplexMatrix &a) {
    Complex s = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        s += a(i, i);
    }
    return s;
}

inline Complex trace_of(std::initializer_list<const ComplexMatrix *> factors) {
    auto it = factors.begin();
    ComplexMatrix acc = **it;
    for (++it; it != factors.end(); ++it) {
        acc = naive_product(acc, **it);
    }
    return naive_trace(acc);
}

inline double max_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    double worst = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

/// Smaller eigenvalue of a 2x2 Hermitian matrix.
inline double min_eigenvalue_2x2(const ComplexMatrix &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    return 0.5 * (a + d) - std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
}

/// Bloch vector of a 2x2 Hermitian unit-trace matrix.
inline std::array<double, 3> bloch(const ComplexMatrix &m) {
    return {2 * m(0, 1).real(), -2 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

inline ComplexMatrix from_bloch(double x, double y, double z) {
    return ComplexMatrix{{0.5 * (1 + z), Complex(0.5 * x, -0.5 * y)}, {Complex(0.5 * x, 0.5 * y), 0.5 * (1 - z)}};
}

}  // namespace oracle

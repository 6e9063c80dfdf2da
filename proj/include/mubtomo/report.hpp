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
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string>
#include <vector>

namespace mubtomo {

/// Outcome of one identity sweep: the worst deviation seen, where it was seen,
/// and how many index tuples were examined.
struct CheckResult {
    std::string name;
    double tolerance = 0;
    double max_violation = 0;
    std::vector<std::size_t> argmax;
    std::uint64_t tuple_count = 0;
    bool sampled = false;

    CheckResult() = default;
    CheckResult(std::string name, double tolerance) : name(std::move(name)), tolerance(tolerance) {
    }

    /// Folds one observation in. NaN counts as an infinite violation.
    void record(double violation, std::initializer_list<std::size_t> tuple) {
        ++tuple_count;
        if (std::isnan(violation)) {
            violation = std::numeric_limits<double>::infinity();
        }
        if (violation > max_violation || (tuple_count == 1 && argmax.empty())) {
            max_violation = std::max(max_violation, violation);
            argmax.assign(tuple);
        }
    }

    bool passed() const {
        return max_violation <= tolerance;
    }
};

enum class SweepMode {
    /// Exhaustive when d ≤ 3, sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
};

struct SweepOptions {
    SweepMode mode = SweepMode::Auto;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    double tolerance = 1e-12;

    bool exhaustive_for(std::size_t d) const {
        return mode == SweepMode::Exhaustive || (mode == SweepMode::Auto && d <= 3);
    }
};

}  // namespace mubtomo

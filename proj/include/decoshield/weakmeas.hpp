// Copyright 2026 The Decoshield Authors
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

// Diagonal weak measurements and their post-selected application.

#include "decoshield/linalg.hpp"

#include <vector>

namespace decoshield {

/// A diagonal, generally non-unitary measurement operator. Strengths are the
/// raw diagonal entries; they may exceed 1, in which case the physical
/// operator is the rescaled one returned by physical_form().
class WeakMeasurement {
public:
    /// Throws ParameterError for negative strengths or a length other than 2 or 4.
    explicit WeakMeasurement(std::vector<double> strengths);

    /// diag(1, m): partial collapse towards |0> before the channel.
    static WeakMeasurement pre(double m);
    /// diag(n, 1): reversal measurement after the channel.
    static WeakMeasurement post(double n);
    /// diag(1, m1) x diag(1, m2).
    static WeakMeasurement pre(double m1, double m2);
    /// diag(n1, 1) x diag(n2, 1).
    static WeakMeasurement post(double n1, double n2);

    const std::vector<double>& strengths() const { return strengths_; }
    int qubit_count() const { return strengths_.size() == 2 ? 1 : 2; }
    int dim() const { return static_cast<int>(strengths_.size()); }

    ComplexMatrix raw_operator() const;

private:
    std::vector<double> strengths_;
};

struct PhysicalForm {
    ComplexMatrix op;
    /// 1 / max(1, largest strength).
    double scale;
};

/// Rescales the raw operator so that op^dagger op <= I.
PhysicalForm physical_form(const WeakMeasurement& wm);

struct PostSelected {
    DensityMatrix state;
    double prob;
};

/// Conjugates by the physical operator and renormalizes. `prob` is the
/// probability of the retained outcome; it therefore carries the squared
/// scale factor. Throws StateError when the outcome has probability < 1e-14.
PostSelected apply_postselected(const WeakMeasurement& wm, const DensityMatrix& rho);

}  // namespace decoshield

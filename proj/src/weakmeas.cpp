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

#include "decoshield/weakmeas.hpp"

#include "decoshield/errors.hpp"

#include <algorithm>
#include <string>

namespace decoshield {

namespace {

constexpr double kMinPostSelection = 1e-14;

}  // namespace

WeakMeasurement::WeakMeasurement(std::vector<double> strengths) : strengths_(std::move(strengths)) {
    if (strengths_.size() != 2 && strengths_.size() != 4) {
        throw ParameterError("weak measurement needs 2 or 4 diagonal entries, got " +
                             std::to_string(strengths_.size()));
    }
    for (double s : strengths_) {
        if (!(s >= 0.0)) throw ParameterError("weak measurement strengths must be >= 0");
    }
}

WeakMeasurement WeakMeasurement::pre(double m) { return WeakMeasurement({1.0, m}); }

WeakMeasurement WeakMeasurement::post(double n) { return WeakMeasurement({n, 1.0}); }

WeakMeasurement WeakMeasurement::pre(double m1, double m2) {
    return WeakMeasurement({1.0, m2, m1, m1 * m2});
}

// The diagonal is (n1 n2, n1, n2, 1); a projective diag(n, 0) factor would
// annihilate the |01>, |10> and |11> populations of the output.
WeakMeasurement WeakMeasurement::post(double n1, double n2) {
    return WeakMeasurement({n1 * n2, n1, n2, 1.0});
}

ComplexMatrix WeakMeasurement::raw_operator() const { return ComplexMatrix::diagonal(strengths_); }

PhysicalForm physical_form(const WeakMeasurement& wm) {
    const double largest = *std::max_element(wm.strengths().begin(), wm.strengths().end());
    const double c_max = std::max(1.0, largest);
    const double scale = 1.0 / c_max;
    return {wm.raw_operator() * Complex(scale), scale};
}

PostSelected apply_postselected(const WeakMeasurement& wm, const DensityMatrix& rho) {
    if (wm.dim() != rho.dim()) throw DimensionError("apply_postselected: dimension mismatch");
    const PhysicalForm form = physical_form(wm);
    const Conjugated out = conjugate_by(form.op, rho);
    if (out.weight < kMinPostSelection) {
        throw StateError("post-selection impossible: outcome probability below 1e-14");
    }
    return {DensityMatrix::normalized(out.matrix), std::min(out.weight, 1.0)};
}

}  // namespace decoshield

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

#include "decoshield/errors.hpp"
#include "decoshield/weakmeas.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace decoshield;

TEST_SUITE("weakmeas") {

TEST_CASE("operator layouts") {
    CHECK(WeakMeasurement::pre(0.3).raw_operator().max_abs_diff(ComplexMatrix::diagonal({1.0, 0.3})) == 0.0);
    CHECK(WeakMeasurement::post(0.3).raw_operator().max_abs_diff(ComplexMatrix::diagonal({0.3, 1.0})) == 0.0);
    CHECK(WeakMeasurement::pre(0.3, 0.6).raw_operator().max_abs_diff(
              tensor(ComplexMatrix::diagonal({1.0, 0.3}), ComplexMatrix::diagonal({1.0, 0.6}))) < 1e-16);
    CHECK(WeakMeasurement::post(0.3, 0.6).raw_operator().max_abs_diff(
              tensor(ComplexMatrix::diagonal({0.3, 1.0}), ComplexMatrix::diagonal({0.6, 1.0}))) < 1e-16);
    CHECK(WeakMeasurement::pre(0.3, 0.6).qubit_count() == 2);
    CHECK(WeakMeasurement::pre(0.3).qubit_count() == 1);
}

TEST_CASE("invalid strengths") {
    CHECK_THROWS_AS(WeakMeasurement({1.0, -0.1}), ParameterError);
    CHECK_THROWS_AS(WeakMeasurement({1.0, 0.5, 0.2}), ParameterError);
    CHECK_THROWS_AS(WeakMeasurement::post(-1.0), ParameterError);
    CHECK_THROWS_AS(apply_postselected(WeakMeasurement::pre(0.5, 0.5), DensityMatrix::maximally_mixed(2)),
                    DimensionError);
}

TEST_CASE("physical_form") {
    const auto a = physical_form(WeakMeasurement({1.0, 0.5}));
    CHECK(a.op.max_abs_diff(ComplexMatrix::diagonal({1.0, 0.5})) == 0.0);
    CHECK(a.scale == 1.0);

    const auto b = physical_form(WeakMeasurement({1.0, 2.0}));
    CHECK(b.op.max_abs_diff(ComplexMatrix::diagonal({0.5, 1.0})) == 0.0);
    CHECK(b.scale == 0.5);

    const auto wm = WeakMeasurement::post(0.5, 0.5);
    const auto c = physical_form(wm);
    CHECK(c.op.max_abs_diff(wm.raw_operator()) == 0.0);
    CHECK(c.scale == 1.0);
}

TEST_CASE("apply_postselected examples") {
    std::mt19937_64 rng(47);
    const auto rho = test::random_density(rng, 2);
    const auto same = apply_postselected(WeakMeasurement::pre(1.0), rho);
    CHECK(same.state.matrix().max_abs_diff(rho.matrix()) < 1e-15);
    CHECK(same.prob == doctest::Approx(1.0).epsilon(1e-15));

    const auto plus = to_density(PureQubit::equatorial(0.0));
    const auto collapsed = apply_postselected(WeakMeasurement::pre(0.0), plus);
    CHECK(collapsed.state.matrix().max_abs_diff(ComplexMatrix::diagonal({1.0, 0.0})) < 1e-15);
    CHECK(collapsed.prob == doctest::Approx(0.5).epsilon(1e-15));

    const auto mixed = apply_postselected(WeakMeasurement::pre(0.5), DensityMatrix::maximally_mixed(2));
    CHECK(mixed.state.matrix().max_abs_diff(ComplexMatrix::diagonal({0.8, 0.2})) < 1e-15);
    CHECK(mixed.prob == doctest::Approx(0.625).epsilon(1e-15));
}

TEST_CASE("impossible post-selection is an error") {
    const DensityMatrix one(ComplexMatrix::diagonal({0.0, 1.0}));
    CHECK_THROWS_AS(apply_postselected(WeakMeasurement::pre(0.0), one), StateError);
    CHECK_THROWS_AS(apply_postselected(WeakMeasurement::pre(1e-8), one), StateError);
    CHECK_NOTHROW(apply_postselected(WeakMeasurement::pre(1e-6), one));
}

TEST_CASE("probability bounds and the equal-strength case") {
    std::mt19937_64 rng(53);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        const bool two = trial % 2;
        const auto rho = test::random_density(rng, two ? 4 : 2);
        const auto wm = two ? WeakMeasurement::pre(u(rng), u(rng)) : WeakMeasurement::post(u(rng));
        const auto out = apply_postselected(wm, rho);
        CHECK(out.prob >= 0.0);
        CHECK(out.prob <= 1.0);
    }
    // Equal strengths are a multiple of the identity: probability 1 and the
    // input state back.
    for (double c : {0.4, 1.0, 1.7}) {
        const auto rho = test::random_density(rng, 4);
        const auto out = apply_postselected(WeakMeasurement({c, c, c, c}), rho);
        CHECK(out.prob == doctest::Approx(std::min(1.0, c * c)).epsilon(1e-14));
        CHECK(out.state.matrix().max_abs_diff(rho.matrix()) < 1e-14);
    }
    // Unequal strengths on a full-rank state always lose some probability.
    const auto out = apply_postselected(WeakMeasurement::pre(0.999), DensityMatrix::maximally_mixed(2));
    CHECK(out.prob < 1.0);
}

TEST_CASE("global rescaling leaves the state unchanged") {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const double m = u(rng);
        const double c = u(rng);
        const auto rho = test::random_density(rng, 2);
        const auto base = apply_postselected(WeakMeasurement({1.0, m}), rho);
        const auto scaled = apply_postselected(WeakMeasurement({c, c * m}), rho);
        CHECK(scaled.state.matrix().max_abs_diff(base.state.matrix()) <= 1e-12);
        CHECK(std::abs(scaled.prob - c * c * base.prob) <= 1e-12);
    }
}

}  // TEST_SUITE

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

#include "decoshield/entangle_protection.hpp"
#include "decoshield/errors.hpp"
#include "decoshield/numeric_verify.hpp"

#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

using namespace decoshield;
using namespace decoshield::entangle;

namespace {

// Reference channel pair and the sudden-death channels.
const GadParams kRef1(0.9, 0.5), kRef2(0.95, 0.3);
const GadParams kEsd(0.7, 0.61);

// Independent numpy evaluation (direct 4x4 Kraus products, Wootters formula,
// scipy Nelder-Mead over (m, n1, n2)).
constexpr double kRefLambda1 = 0.3285186;
constexpr double kRefLambda2Max = 0.5299918640;
constexpr double kRefM = 0.3434580885;
constexpr double kRefN1 = 0.5036155644;
constexpr double kRefN2 = 0.4421086912;
constexpr double kRefProb = 0.0603797478;
constexpr double kEsdLambda1 = -0.0041820;
constexpr double kEsdLambda2Max = 0.0080498764;

double lambda2_at(const EntangledInput& in, const GadParams& ch1, const GadParams& ch2, double m1, double m2,
                  double n1, double n2) {
    return concurrence_lambda2(pre_measured_state(in, ch1, ch2, m1, m2), n1, n2);
}

}  // namespace

TEST_SUITE("entangle_protection") {

TEST_CASE("EntangledInput") {
    CHECK_THROWS_AS(EntangledInput(1.0, 1.0), ParameterError);
    CHECK_THROWS_AS(EntangledInput::from_alpha_sq(1.2), ParameterError);
    CHECK_NOTHROW(EntangledInput(Complex(0.6, 0.0), Complex(0.0, 0.8)));
    const auto bell = EntangledInput::bell();
    CHECK(bell.alpha_sq() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(wootters_concurrence(bell.density()) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("channel-degraded state") {
    SUBCASE("identity channels") {
        const EntangledInput in(Complex(0.6, 0.0), Complex(0.0, 0.8));
        const auto x = channel_degraded_state(in, GadParams(0.3, 0.0), GadParams(0.7, 0.0));
        CHECK(x.a == doctest::Approx(0.36).epsilon(1e-15));
        CHECK(x.d == doctest::Approx(0.64).epsilon(1e-15));
        CHECK(x.b == 0.0);
        CHECK(x.c == 0.0);
        CHECK(std::abs(x.e - in.alpha() * std::conj(in.beta())) < 1e-15);
    }
    SUBCASE("product input") {
        const auto x = channel_degraded_state(EntangledInput(1.0, 0.0), kRef1, kRef2);
        CHECK(x.e == Complex(0.0));
        CHECK(wootters_concurrence(DensityMatrix(x_state_matrix(x))) < 1e-7);
    }
    SUBCASE("reference pair") {
        const auto x = channel_degraded_state(EntangledInput::bell(), kRef1, kRef2);
        CHECK(std::abs(x.b - 0.168) < 1e-12);
        CHECK(std::abs(x.c - 0.103) < 1e-12);
        CHECK(std::abs(x.a - 0.532) < 1e-12);
        CHECK(std::abs(x.d - 0.197) < 1e-12);
        CHECK(std::abs(std::abs(x.e) - 0.29580398915498) < 1e-12);
        CHECK(std::abs(x.b0 - 0.5 * 0.01425) < 1e-15);
        CHECK(std::abs(x.b1 - 0.5 * 0.32175) < 1e-15);
    }
}

TEST_CASE("channel-degraded populations are a state") {
    std::mt19937_64 rng(67);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto in = EntangledInput::from_alpha_sq(u(rng));
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const auto x = channel_degraded_state(in, ch1, ch2);
        CHECK(std::abs(x.a + x.b + x.c + x.d - 1.0) <= 1e-12);
        CHECK(std::abs(x.e) <= std::sqrt(x.a * x.d) + 1e-10);
        const auto s = channel_split(ch1, ch2);
        CHECK(std::abs(x.a0 - s.a0 * in.alpha_sq()) <= 1e-15);
        CHECK(std::abs(x.d1 - s.d1 * in.beta_sq()) <= 1e-15);
        CHECK(std::abs(s.a0 + s.b0 + s.c0 + s.d0 - 1.0) <= 1e-12);
        CHECK(std::abs(s.a1 + s.b1 + s.c1 + s.d1 - 1.0) <= 1e-12);
    }
}

TEST_CASE("lambda1") {
    const auto id = channel_degraded_state(EntangledInput::bell(), GadParams(0.5, 0.0), GadParams(0.5, 0.0));
    CHECK(concurrence_lambda1(id) == doctest::Approx(1.0).epsilon(1e-15));
    const double ref = concurrence_lambda1(channel_degraded_state(EntangledInput::bell(), kRef1, kRef2));
    CHECK(std::abs(ref - kRefLambda1) < 1e-6);
    CHECK(std::abs(ref - 0.33) < 0.005);
    const double esd = concurrence_lambda1(channel_degraded_state(EntangledInput::bell(), kEsd, kEsd));
    CHECK(std::abs(esd - kEsdLambda1) < 1e-6);
    CHECK(esd < 0.0);
}

TEST_CASE("protected_state") {
    const auto bell = EntangledInput::bell();
    SUBCASE("unit strengths") {
        const auto ps = protected_state(bell, kRef1, kRef2, 1.0, 1.0, 1.0, 1.0);
        const auto x = channel_degraded_state(bell, kRef1, kRef2);
        CHECK(ps.coeffs.a == x.a);
        CHECK(ps.coeffs.b == x.b);
        CHECK(ps.coeffs.c == x.c);
        CHECK(ps.coeffs.d == x.d);
        CHECK(ps.success_prob == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(concurrence_lambda2(ps.coeffs, 1.0, 1.0) == doctest::Approx(concurrence_lambda1(x)).epsilon(1e-15));
    }
    SUBCASE("reference pair near the optimum") {
        const auto ps = protected_state(bell, kRef1, kRef2, 0.34, 1.0, 0.50, 0.44);
        CHECK(std::abs(ps.success_prob - 0.06) < 0.005);
        CHECK(std::abs(concurrence_lambda2(ps.coeffs, 0.50, 0.44) - 0.53) < 0.005);
    }
    SUBCASE("alpha = 0") {
        const auto ps = protected_state(EntangledInput(0.0, 1.0), kRef1, kRef2, 0.34, 1.0, 0.5, 0.44);
        CHECK(ps.coeffs.e == Complex(0.0));
        CHECK(concurrence_lambda2(ps.coeffs, 0.5, 0.44) <= 0.0);
        CHECK(wootters_concurrence(ps.state()) < 1e-7);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(protected_state(bell, kRef1, kRef2, 0.0, 1.0, 1.0, 1.0), ParameterError);
        CHECK_THROWS_AS(protected_state(bell, kRef1, kRef2, 1.0, 1.0, 1.0, -0.2), ParameterError);
        CHECK_THROWS_AS(pre_measured_state(bell, kRef1, kRef2, -0.1, 1.0), ParameterError);
        // No damping and |alpha|^2 = 1 with n1 n2 tiny: outcome probability ~ n^4.
        CHECK_THROWS_AS(protected_state(EntangledInput(1.0, 0.0), GadParams(0.5, 0.0), GadParams(0.5, 0.0), 1.0,
                                        1.0, 1e-4, 1e-4),
                        StateError);
    }
}

TEST_CASE("closed forms equal the pipeline and Wootters") {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 1.0), s(0.05, 2.0);
    double worst_state = 0.0, worst_prob = 0.0, worst_conc = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double phase = 6.283185307179586 * u(rng);
        const double a2 = 0.02 + 0.96 * u(rng);
        const EntangledInput in(std::sqrt(a2), std::polar(std::sqrt(1.0 - a2), phase));
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const double m1 = s(rng), m2 = s(rng), n1 = s(rng), n2 = s(rng);
        const auto closed = protected_state(in, ch1, ch2, m1, m2, n1, n2);
        const auto piped = run_pipeline(in, ch1, ch2, m1, m2, n1, n2);
        worst_state = std::max(worst_state, closed.state().matrix().max_abs_diff(piped.state.matrix()));
        worst_prob = std::max(worst_prob, std::abs(closed.success_prob - piped.success_prob));
        const double lambda = std::max(0.0, concurrence_lambda2(closed.coeffs, n1, n2));
        worst_conc = std::max(worst_conc, std::abs(lambda - wootters_concurrence(piped.state)));
    }
    CHECK(worst_state <= 1e-12);
    CHECK(worst_prob <= 1e-12);
    CHECK(worst_conc <= 1e-10);
}

TEST_CASE("swapping the qubits transposes b and c") {
    std::mt19937_64 rng(73);
    std::uniform_real_distribution<double> u(0.0, 1.0), s(0.05, 1.5);
    for (int trial = 0; trial < 300; ++trial) {
        const auto in = EntangledInput::from_alpha_sq(u(rng));
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const double m1 = s(rng), m2 = s(rng), n1 = s(rng), n2 = s(rng);
        const auto x = pre_measured_state(in, ch1, ch2, m1, m2);
        const auto y = pre_measured_state(in, ch2, ch1, m2, m1);
        CHECK(std::abs(x.b - y.c) <= 1e-15);
        CHECK(std::abs(x.c - y.b) <= 1e-15);
        CHECK(std::abs(x.a - y.a) <= 1e-15);
        CHECK(std::abs(x.d - y.d) <= 1e-15);
        CHECK(std::abs(concurrence_lambda1(channel_degraded_state(in, ch1, ch2)) -
                       concurrence_lambda1(channel_degraded_state(in, ch2, ch1))) <= 1e-14);
        CHECK(std::abs(concurrence_lambda2(x, n1, n2) - concurrence_lambda2(y, n2, n1)) <= 1e-14);
    }
}

TEST_CASE("only the product m1 m2 matters") {
    const auto bell = EntangledInput::bell();
    const auto rep = optimal_parameters(bell, kRef1, kRef2);
    const double ref = lambda2_at(bell, kRef1, kRef2, rep.m_opt, 1.0, rep.n1_opt, rep.n2_opt);
    for (double m2 : {0.4, 0.8, 1.0, 1.6}) {
        const double m1 = rep.m_opt / m2;
        CHECK(std::abs(lambda2_at(bell, kRef1, kRef2, m1, m2, rep.n1_opt, rep.n2_opt) - ref) <= 1e-12);
    }
}

TEST_CASE("reference pair optimum") {
    const auto rep = optimal_parameters(EntangledInput::bell(), kRef1, kRef2);
    CHECK(std::abs(rep.lambda1 - kRefLambda1) < 1e-6);
    CHECK(std::abs(rep.lambda2_max - kRefLambda2Max) < 1e-9);
    CHECK(std::abs(rep.lambda2 - rep.lambda2_max) < 1e-12);
    CHECK(std::abs(rep.m_opt - kRefM) < 1e-9);
    CHECK(std::abs(rep.n1_opt - kRefN1) < 1e-9);
    CHECK(std::abs(rep.n2_opt - kRefN2) < 1e-9);
    CHECK(std::abs(rep.success_prob - kRefProb) < 1e-9);
    CHECK(rep.concurrence == rep.lambda2_max);
    CHECK_FALSE(rep.projective_limit);
    CHECK_FALSE(rep.degenerate_h);
    // Simplex refinement from the grid reaches the same strengths.
    const auto bell = EntangledInput::bell();
    const verify::Objective f = [&](std::span<const double> v) {
        return lambda2_at(bell, kRef1, kRef2, v[0], 1.0, v[1], v[2]);
    };
    const auto box = verify::SearchBox::cube(3, 1e-3, 2.0, 40);
    const auto found = verify::simplex_maximize(f, verify::grid_maximize(f, box).argmax, box);
    CHECK(std::abs(found.argmax[0] - kRefM) < 1e-4);
    CHECK(std::abs(found.argmax[1] - kRefN1) < 1e-4);
    CHECK(std::abs(found.argmax[2] - kRefN2) < 1e-4);
}

TEST_CASE("protection circumvents sudden death") {
    const auto rep = optimal_parameters(EntangledInput::bell(), kEsd, kEsd);
    CHECK(rep.lambda1 < 0.0);
    CHECK(rep.lambda2_max > 0.0);
    CHECK(std::abs(rep.lambda2_max - kEsdLambda2Max) < 1e-9);
    const auto bell = EntangledInput::bell();
    const verify::Objective f = [&](std::span<const double> v) {
        return lambda2_at(bell, kEsd, kEsd, v[0], 1.0, v[1], v[2]);
    };
    const auto box = verify::SearchBox::cube(3, 1e-3, 2.0, 40);
    const auto found = verify::simplex_maximize(f, verify::grid_maximize(f, box).argmax, box);
    CHECK(std::abs(found.value - rep.lambda2_max) < 1e-4);
}

TEST_CASE("random channels never beat the closed-form maximum") {
    std::mt19937_64 rng(83);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    const auto bell = EntangledInput::bell();
    int checked = 0;
    while (checked < 5) {
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const double bound = lambda2_max(ch1, ch2);
        if (bound <= 0.0) continue;
        const verify::Objective f = [&](std::span<const double> v) {
            return lambda2_at(bell, ch1, ch2, v[0], 1.0, v[1], v[2]);
        };
        const auto box = verify::SearchBox::cube(3, 1e-3, 2.0, 60);
        const auto found = verify::simplex_maximize(f, verify::grid_maximize(f, box).argmax, box);
        CHECK(found.value <= bound + 1e-6);
        const auto rep = optimal_parameters(bell, ch1, ch2);
        if (std::max({rep.m_opt, rep.n1_opt, rep.n2_opt}) <= 2.0) CHECK(found.value >= bound - 1e-4);
        ++checked;
    }
}

TEST_CASE("a negative bound is a stationary value, not the supremum") {
    // Deep decoherence: |E| < sqrt(BC) at every m, so Lambda2 < 0 and it
    // approaches 0 from below as n1, n2 -> 0. The concurrence is 0 either way.
    const GadParams ch1(0.55, 0.4), ch2(0.85, 0.9);
    const auto rep = optimal_parameters(EntangledInput::bell(), ch1, ch2);
    CHECK(rep.lambda2_max < -0.1);
    CHECK(rep.concurrence == 0.0);
    const auto x = pre_measured_state(EntangledInput::bell(), ch1, ch2, rep.m_opt, 1.0);
    CHECK(concurrence_lambda2(x, 1e-3, 1e-3) > rep.lambda2_max);
    CHECK(concurrence_lambda2(x, 1e-3, 1e-3) < 0.0);
}

TEST_CASE("identity channels") {
    for (double a2 : {0.5, 0.2}) {
        const auto in = EntangledInput::from_alpha_sq(a2);
        const GadParams id1(0.3, 0.0), id2(0.8, 0.0);
        const double unit = lambda2_at(in, id1, id2, 1.0, 1.0, 1.0, 1.0);
        CHECK(std::abs(unit - 2.0 * std::sqrt(in.alpha_sq() * in.beta_sq())) < 1e-15);
        const auto rep = optimal_parameters(in, id1, id2);
        CHECK(rep.degenerate_h);
        CHECK(rep.lambda2_max == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(rep.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("equality conditions hold at the optimal m") {
    std::mt19937_64 rng(79);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 200; ++trial) {
        const auto in = EntangledInput::from_alpha_sq(u(rng));
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const auto rep = optimal_parameters(in, ch1, ch2);
        CHECK(std::abs(rep.h - rep.h_from_ad) <= 1e-12 * rep.h);
        const auto x = pre_measured_state(in, ch1, ch2, rep.m_opt, 1.0);
        const double w = x.weight;
        // BC >= (sqrt(B0 C1) + sqrt(B1 C0))^2 w and the AD analogue, both tight here.
        const double bc_lhs = x.b * x.c;
        const double bc_rhs = std::pow(std::sqrt(x.b0 * x.c1) + std::sqrt(x.b1 * x.c0), 2) * w;
        const double ad_lhs = x.a * x.d;
        const double ad_rhs = std::pow(std::sqrt(x.a0 * x.d1) + std::sqrt(x.a1 * x.d0), 2) * w;
        CHECK(std::abs(bc_lhs - bc_rhs) <= 1e-12 * std::max(1.0, bc_lhs));
        CHECK(std::abs(ad_lhs - ad_rhs) <= 1e-12 * std::max(1.0, ad_lhs));
        // And the Lambda2 at the reported strengths is the channel-only maximum.
        CHECK(std::abs(rep.lambda2 - rep.lambda2_max) <= 1e-10);
    }
}

TEST_CASE("reversal strengths maximize over (n1, n2) at fixed m") {
    const auto bell = EntangledInput::bell();
    for (double m : {0.2, 0.5, 1.0}) {
        const auto x = pre_measured_state(bell, kRef1, kRef2, m, 1.0);
        const auto n = optimal_reversal(x);
        const verify::Objective f = [&](std::span<const double> v) { return concurrence_lambda2(x, v[0], v[1]); };
        const auto found = verify::grid_maximize(f, verify::SearchBox::cube(2, 1e-3, 2.0, 500));
        CHECK(std::abs(found.argmax[0] - n.n1) < 0.01);
        CHECK(std::abs(found.argmax[1] - n.n2) < 0.01);
        CHECK(found.value <= concurrence_lambda2(x, n.n1, n.n2) + 1e-12);
    }
    XStateCoefficients bad{};
    bad.a = 0.5;
    bad.d = 0.5;
    CHECK_THROWS_AS(optimal_reversal(bad), ParameterError);
}

TEST_CASE("maximum and reversal strengths do not depend on alpha") {
    for (const auto& [c1, c2] : std::array<std::pair<GadParams, GadParams>, 3>{
             {{kRef1, kRef2}, {kEsd, kEsd}, {GadParams(0.3, 0.8), GadParams(0.6, 0.2)}}}) {
        const auto ref = optimal_parameters(EntangledInput::from_alpha_sq(0.5), c1, c2);
        for (double a2 : {0.1, 0.3, 0.7, 0.9}) {
            const auto rep = optimal_parameters(EntangledInput::from_alpha_sq(a2), c1, c2);
            CHECK(std::abs(rep.lambda2 - ref.lambda2) <= 1e-10);
            CHECK(std::abs(rep.n1_opt - ref.n1_opt) <= 1e-10);
            CHECK(std::abs(rep.n2_opt - ref.n2_opt) <= 1e-10);
            CHECK(std::abs(rep.h - ref.h) <= 1e-15);
        }
    }
}

TEST_CASE("success probability peaks at |alpha|^2 = 1/(1+h)") {
    for (const auto& [c1, c2] : std::array<std::pair<GadParams, GadParams>, 3>{
             {{kRef1, kRef2}, {kEsd, kEsd}, {GadParams(0.3, 0.8), GadParams(0.6, 0.2)}}}) {
        const double target = optimal_parameters(EntangledInput::bell(), c1, c2).alpha_sq_opt;
        double best = -1.0, best_a2 = 0.0;
        for (int k = 1; k < 20000; ++k) {
            const double a2 = k / 20000.0;
            const double prob = optimal_parameters(EntangledInput::from_alpha_sq(a2), c1, c2).success_prob;
            if (prob > best) {
                best = prob;
                best_a2 = a2;
            }
        }
        CHECK(std::abs(best_a2 - target) <= 1e-4);
    }
}

TEST_CASE("p -> 1 approaches the amplitude-damping limit") {
    const auto bell = EntangledInput::bell();
    const auto exact = optimal_parameters(bell, GadParams(1.0, 0.5), GadParams(1.0, 0.3));
    CHECK(exact.projective_limit);
    CHECK(exact.m_opt == 0.0);
    CHECK(exact.success_prob == 0.0);
    CHECK(exact.lambda2_max == doctest::Approx(1.0).epsilon(1e-15));

    const auto near = optimal_parameters(bell, GadParams(1.0 - 1e-9, 0.5), GadParams(1.0 - 1e-9, 0.3));
    CHECK_FALSE(near.projective_limit);
    CHECK(near.m_opt < 1e-3);
    CHECK(near.lambda2 > 1.0 - 1e-3);
}

TEST_CASE("product inputs and domain errors") {
    for (const EntangledInput& in : {EntangledInput(1.0, 0.0), EntangledInput(0.0, 1.0)}) {
        const auto rep = optimal_parameters(in, kRef1, kRef2);
        CHECK(rep.zero_entanglement);
        CHECK(rep.concurrence == 0.0);
    }
    CHECK_THROWS_AS(optimal_parameters(EntangledInput::bell(), GadParams(0.0, 0.5), kRef2), ParameterError);
}

}  // TEST_SUITE

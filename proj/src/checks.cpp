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

#include "decoshield/checks.hpp"

#include "decoshield/channels.hpp"
#include "decoshield/entangle_protection.hpp"
#include "decoshield/numeric_verify.hpp"
#include "decoshield/qubit_protection.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

namespace decoshield::checks {

namespace {

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

CheckResult within(std::string name, double deviation, double tolerance) {
    return {std::move(name), deviation <= tolerance, fmt("max deviation %.3e (tolerance %.1e)", deviation, tolerance)};
}

DensityMatrix random_pure_qubit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double theta = std::acos(1.0 - 2.0 * u(rng));
    const double phi = 2.0 * std::numbers::pi * u(rng);
    return to_density(PureQubit{theta, phi});
}

CheckResult kraus_completeness() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            worst = std::max(worst, check_trace_preserving(gad_channel(GadParams(i / 9.0, j / 9.0))));
        }
    }
    return within("GAD Kraus completeness", worst, 1e-12);
}

CheckResult dilation_matches_kraus() {
    std::mt19937_64 rng(7);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const GadParams params(i / 9.0, j / 9.0);
            for (int k = 0; k < 20; ++k) {
                const DensityMatrix rho = random_pure_qubit(rng);
                const DensityMatrix a = apply_channel(gad_channel(params), rho);
                const DensityMatrix b = apply_via_dilation(params, rho);
                worst = std::max(worst, a.matrix().max_abs_diff(b.matrix()));
            }
        }
    }
    return within("dilation equals Kraus sum", worst, 1e-12);
}

CheckResult qubit_closed_form_matches_pipeline() {
    double worst = 0.0;
    const double phi = 0.7;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const GadParams params(0.05 + 0.1 * i, 0.1 * j);
            for (int a = 1; a <= 5; ++a) {
                for (int b = 1; b <= 5; ++b) {
                    const double m = 0.4 * a, n = 0.4 * b;
                    const auto closed = qubit::protect_equatorial(params, m, n, phi);
                    const DensityMatrix in = to_density(PureQubit::equatorial(phi));
                    const auto pipe = qubit::run_pipeline(params, m, n, in);
                    worst = std::max(worst, closed.output_state.matrix().max_abs_diff(pipe.state.matrix()));
                    worst = std::max(worst, std::abs(closed.fidelity - fidelity(in, pipe.state)));
                    worst = std::max(worst, std::abs(closed.success_prob - pipe.success_prob));
                }
            }
        }
    }
    return within("single-qubit closed form equals pipeline", worst, 1e-12);
}

CheckResult error_rate_complements_fidelity() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const GadParams params(0.05 + 0.1 * i, 0.1 * j);
            for (double m : {0.3, 1.0, 1.7}) {
                for (double n : {0.5, 1.0, 1.4}) {
                    const double re = qubit::bb84_error_rate(params, m, n);
                    worst = std::max(worst, std::abs(re - (1.0 - qubit::equatorial_fidelity(params, m, n))));
                }
            }
        }
    }
    return within("BB84 error rate equals 1 - F", worst, 1e-12);
}

CheckResult six_state_matches_pipeline() {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const GadParams params(0.05 + 0.1 * i, 0.1 * j);
            const auto closed = qubit::average_fidelity_six(params, 0.8, 0.6);
            const auto pipe = qubit::average_fidelity_six_pipeline(params, 0.8, 0.6);
            worst = std::max({worst, std::abs(closed.f0 - pipe.f0), std::abs(closed.f1 - pipe.f1),
                              std::abs(closed.fe - pipe.fe), std::abs(closed.favg - pipe.favg)});
        }
    }
    return within("six-state average closed form equals pipeline", worst, 1e-12);
}

CheckResult qubit_optimum_matches_search() {
    const GadParams params(0.8, 0.3);
    const auto opt = qubit::optimal_strengths(params);
    const verify::Objective f = [&](std::span<const double> x) {
        return qubit::equatorial_fidelity(params, x[0], x[1]);
    };
    const auto box = verify::SearchBox::cube(2, 1e-3, 2.0, 400);
    const auto seed = verify::grid_maximize(f, box);
    const auto refined = verify::simplex_maximize(f, seed.argmax, box);
    const double arg_dev = std::max(std::abs(refined.argmax[0] - opt.m), std::abs(refined.argmax[1] - opt.n));
    const bool ok = arg_dev <= 1e-3 && std::abs(refined.value - opt.f_max) <= 1e-6;
    return {"single-qubit optimum matches grid+simplex (p=0.8, r=0.3)", ok,
            fmt("argmax deviation %.2e, value deviation %.2e", arg_dev, std::abs(refined.value - opt.f_max))};
}

CheckResult g_bounds() {
    bool ok = true;
    double worst_gain = 1.0;
    for (int i = 0; i < 50; ++i) {
        for (int j = 0; j < 50; ++j) {
            const GadParams params((i + 1) / 50.0, j / 50.0);
            const double g = qubit::g_value(params);
            ok = ok && g <= 1.0 + 1e-12 && g >= std::sqrt(1.0 - params.r()) - 1e-12;
            const double gain = qubit::optimal_strengths(params).f_max - qubit::baseline_fidelity(params);
            worst_gain = std::min(worst_gain, gain);
            ok = ok && gain >= -1e-12;
        }
    }
    return {"F_max >= baseline and sqrt(1-r) <= G <= 1 on 50x50 grid", ok, fmt("min gain %.3e", worst_gain)};
}

CheckResult x_state_matches_wootters() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const auto in = entangle::EntangledInput(std::sqrt(0.3), std::polar(std::sqrt(0.7), 2.0 * u(rng)));
        const auto x = entangle::channel_degraded_state(in, ch1, ch2);
        const double c1 = std::max(0.0, entangle::concurrence_lambda1(x));
        worst = std::max(worst, std::abs(c1 - wootters_concurrence(DensityMatrix(entangle::x_state_matrix(x)))));
        const double m = 0.2 + u(rng), n1 = 0.2 + u(rng), n2 = 0.2 + u(rng);
        const auto ps = entangle::protected_state(in, ch1, ch2, m, 1.0, n1, n2);
        const double c2 = std::max(0.0, entangle::concurrence_lambda2(ps.coeffs, n1, n2));
        worst = std::max(worst, std::abs(c2 - wootters_concurrence(ps.state())));
    }
    return within("X-state concurrences equal Wootters", worst, 1e-10);
}

CheckResult two_qubit_closed_form_matches_pipeline() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 500; ++k) {
        const GadParams ch1(u(rng), u(rng)), ch2(u(rng), u(rng));
        const auto in = entangle::EntangledInput::from_alpha_sq(0.05 + 0.9 * u(rng));
        const double m1 = 0.1 + 1.5 * u(rng), m2 = 0.1 + 1.5 * u(rng);
        const double n1 = 0.1 + 1.5 * u(rng), n2 = 0.1 + 1.5 * u(rng);
        const auto closed = entangle::protected_state(in, ch1, ch2, m1, m2, n1, n2);
        const auto pipe = entangle::run_pipeline(in, ch1, ch2, m1, m2, n1, n2);
        worst = std::max(worst, closed.state().matrix().max_abs_diff(pipe.state.matrix()));
        worst = std::max(worst, std::abs(closed.success_prob - pipe.success_prob));
    }
    return within("two-qubit closed form equals pipeline", worst, 1e-12);
}

CheckResult reference_pair_reproduction() {
    const GadParams ch1(0.9, 0.5), ch2(0.95, 0.3);
    const auto rep = entangle::optimal_parameters(entangle::EntangledInput::bell(), ch1, ch2);
    const bool ok = std::abs(rep.lambda2_max - 0.53) <= 0.005 && std::abs(rep.m_opt - 0.34) <= 0.005 &&
                    std::abs(rep.n1_opt - 0.50) <= 0.005 && std::abs(rep.n2_opt - 0.44) <= 0.005 &&
                    std::abs(rep.success_prob - 0.06) <= 0.005 && std::abs(rep.lambda1 - 0.33) <= 0.005;
    return {"entanglement optimum (p1=0.9, r1=0.5, p2=0.95, r2=0.3)", ok,
            fmt("concurrence %.4f, success probability %.4f", rep.lambda2_max, rep.success_prob)};
}

CheckResult sudden_death_circumvented() {
    const GadParams ch(0.7, 0.61);
    const auto in = entangle::EntangledInput::bell();
    const auto rep = entangle::optimal_parameters(in, ch, ch);
    const verify::Objective f = [&](std::span<const double> x) {
        const auto ps = entangle::protected_state(in, ch, ch, x[0], 1.0, x[1], x[2]);
        return entangle::concurrence_lambda2(ps.coeffs, x[1], x[2]);
    };
    const auto box = verify::SearchBox::cube(3, 1e-3, 2.0, 40);
    const auto seed = verify::grid_maximize(f, box);
    const auto refined = verify::simplex_maximize(f, seed.argmax, box);
    const bool ok = rep.lambda1 < 0.0 && rep.lambda2_max > 0.0 &&
                    std::abs(refined.value - rep.lambda2_max) <= 1e-4;
    return {"sudden death circumvented (p=0.7, r=0.61)", ok,
            fmt("Lambda1 %.5f, optimal Lambda2 %.6f", rep.lambda1, rep.lambda2_max)};
}

CheckResult alpha_independence() {
    const GadParams ch1(0.9, 0.5), ch2(0.95, 0.3);
    const auto ref = entangle::optimal_parameters(entangle::EntangledInput::from_alpha_sq(0.5), ch1, ch2);
    double worst = std::abs(ref.h - ref.h_from_ad);
    for (double a : {0.1, 0.3, 0.7, 0.9}) {
        const auto rep = entangle::optimal_parameters(entangle::EntangledInput::from_alpha_sq(a), ch1, ch2);
        worst = std::max({worst, std::abs(rep.lambda2 - ref.lambda2), std::abs(rep.n1_opt - ref.n1_opt),
                          std::abs(rep.n2_opt - ref.n2_opt), std::abs(rep.lambda2 - rep.lambda2_max)});
    }
    return within("optimal concurrence and n1, n2 independent of alpha", worst, 1e-10);
}

}  // namespace

std::vector<CheckResult> run_all() {
    const std::vector<std::function<CheckResult()>> all{
        kraus_completeness,
        dilation_matches_kraus,
        qubit_closed_form_matches_pipeline,
        error_rate_complements_fidelity,
        six_state_matches_pipeline,
        qubit_optimum_matches_search,
        g_bounds,
        x_state_matches_wootters,
        two_qubit_closed_form_matches_pipeline,
        reference_pair_reproduction,
        sudden_death_circumvented,
        alpha_independence,
    };
    std::vector<CheckResult> out;
    out.reserve(all.size());
    for (const auto& check : all) {
        try {
            out.push_back(check());
        } catch (const std::exception& e) {
            out.push_back({"(check threw)", false, e.what()});
        }
    }
    return out;
}

}  // namespace decoshield::checks

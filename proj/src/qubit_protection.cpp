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

#include "decoshield/qubit_protection.hpp"

#include "decoshield/weakmeas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace decoshield::qubit {

namespace {

constexpr double kMinPostSelection = 1e-14;

void require_positive_strengths(double m, double n) {
    if (!(m > 0.0)) throw ParameterError("m must be > 0, got " + std::to_string(m));
    if (!(n > 0.0)) throw ParameterError("n must be > 0, got " + std::to_string(n));
}

double attenuation(double c) { return std::min(1.0, 1.0 / (c * c)); }

// <psi|rho|psi> for a ket psi.
double overlap(std::span<const Complex> ket, const DensityMatrix& rho) {
    Complex acc = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) acc += std::conj(ket[i]) * rho(i, j) * ket[j];
    }
    return acc.real();
}

std::array<Complex, 2> equatorial_ket(double phi) {
    const double s = 1.0 / std::numbers::sqrt2;
    return {Complex(s), std::polar(s, phi)};
}

}  // namespace

double baseline_fidelity(const GadParams& params) {
    return 0.5 * (1.0 + std::sqrt(1.0 - params.r()));
}

double normalization(const GadParams& params, double m, double n) {
    const double p = params.p();
    const double r = params.r();
    const double m2 = m * m;
    return n * n * (p * r * m2 + p * r - r + 1.0) - p * r * m2 + m2 - p * r + r;
}

double equatorial_fidelity(const GadParams& params, double m, double n) {
    return 0.5 + m * n * std::sqrt(1.0 - params.r()) / normalization(params, m, n);
}

double success_probability(const GadParams& params, double m, double n) {
    return 0.5 * normalization(params, m, n) * attenuation(m) * attenuation(n);
}

ProtectionResult protect_equatorial(const GadParams& params, double m, double n, double phi) {
    require_positive_strengths(m, n);
    const double p = params.p();
    const double r = params.r();
    const double t = normalization(params, m, n);
    const double prob = 0.5 * t * attenuation(m) * attenuation(n);
    if (prob < kMinPostSelection) {
        throw StateError("post-selection impossible: outcome probability below 1e-14");
    }
    const Complex coherence = std::polar(m * n * std::sqrt(1.0 - r), -phi);
    ComplexMatrix out(2);
    out(0, 0) = n * n * (p * r * m * m + p * r - r + 1.0) / t;
    out(0, 1) = coherence / t;
    out(1, 0) = std::conj(coherence) / t;
    out(1, 1) = (-p * r * m * m + m * m - p * r + r) / t;
    return {equatorial_fidelity(params, m, n), prob, DensityMatrix(out), t};
}

PipelineOutcome run_pipeline(const GadParams& params, double m, double n, const DensityMatrix& rho) {
    require_positive_strengths(m, n);
    const PostSelected before = apply_postselected(WeakMeasurement::pre(m), rho);
    const DensityMatrix damped = apply_channel(gad_channel(params), before.state);
    const PostSelected after = apply_postselected(WeakMeasurement::post(n), damped);
    return {after.state, before.prob * after.prob};
}

OptimalStrengths optimal_strengths(const GadParams& params) {
    const double p = params.p();
    const double r = params.r();
    if (p == 0.0) {
        throw ParameterError("optimal strengths diverge at p = 0");
    }
    if (p == 1.0 && r == 1.0) {
        throw ParameterError("optimal strengths undefined at p = 1, r = 1");
    }
    const double f_max = 0.5 * (1.0 + std::sqrt(1.0 - r) / g_value(params));
    if (p == 1.0) return {0.0, 0.0, f_max, true};
    const double relax = 1.0 - r + p * r;
    const double excite = 1.0 - p * r;
    const double m = std::pow((1.0 - p) * relax / (p * excite), 0.25);
    const double n = std::pow((1.0 - p) * excite / (p * relax), 0.25);
    return {m, n, f_max, false};
}

double g_value(const GadParams& params) {
    const double p = params.p();
    const double r = params.r();
    return std::sqrt((1.0 - r * p) * (1.0 - r + r * p)) + r * std::sqrt(p * (1.0 - p));
}

double bb84_error_rate(const GadParams& params, double m, double n) {
    require_positive_strengths(m, n);
    // Two conjugate bases; each signal phi is decoded against phi + pi.
    constexpr double kPi = std::numbers::pi;
    const std::array<std::array<double, 2>, 4> pairs{{
        {0.0, kPi},
        {kPi, 0.0},
        {kPi / 2.0, 3.0 * kPi / 2.0},
        {3.0 * kPi / 2.0, kPi / 2.0},
    }};
    double total = 0.0;
    for (const auto& [signal, partner] : pairs) {
        const auto ket = equatorial_ket(signal);
        const DensityMatrix rho_i = run_pipeline(params, m, n, to_density(PureQubit::equatorial(signal))).state;
        const DensityMatrix rho_j = run_pipeline(params, m, n, to_density(PureQubit::equatorial(partner))).state;
        const double wrong = overlap(ket, rho_j);
        const double right = overlap(ket, rho_i);
        total += wrong / (right + wrong);
    }
    return total / 4.0;
}

AverageFidelityReport average_fidelity_six(const GadParams& params, double m, double n) {
    require_positive_strengths(m, n);
    const double p = params.p();
    const double r = params.r();
    const double n2 = n * n;
    const double relax = 1.0 - r + r * p;
    const double f0 = n2 * relax / (r - r * p + n2 * relax);
    const double f1 = (1.0 - r * p) / (1.0 - r * p + n2 * r * p);
    const double fe = equatorial_fidelity(params, m, n);
    return {f0, f1, fe, (f0 + f1 + 4.0 * fe) / 6.0};
}

AverageFidelityReport average_fidelity_six_pipeline(const GadParams& params, double m, double n) {
    constexpr double kPi = std::numbers::pi;
    auto delivered = [&](const DensityMatrix& in) {
        return fidelity(in, run_pipeline(params, m, n, in).state);
    };
    const double f0 = delivered(to_density(PureQubit{0.0, 0.0}));
    const double f1 = delivered(to_density(PureQubit{kPi, 0.0}));
    double equatorial_sum = 0.0;
    for (double phi : {0.0, kPi, kPi / 2.0, 3.0 * kPi / 2.0}) {
        equatorial_sum += delivered(to_density(PureQubit::equatorial(phi)));
    }
    const double fe = equatorial_sum / 4.0;
    return {f0, f1, fe, (f0 + f1 + equatorial_sum) / 6.0};
}

double baseline_average_fidelity(const GadParams& params) {
    const double s = 1.0 + std::sqrt(1.0 - params.r());
    return 1.0 / 3.0 + s * s / 6.0;
}

OptimalStrengths optimal_average(const GadParams& params) {
    OptimalStrengths best = optimal_strengths(params);
    if (best.projective) {
        // m, n -> 0 sends all six fidelities to 1 when r < 1.
        best.f_max = 1.0;
        return best;
    }
    best.f_max = average_fidelity_six(params, best.m, best.n).favg;
    return best;
}

}  // namespace decoshield::qubit

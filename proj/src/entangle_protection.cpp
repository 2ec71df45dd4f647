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

#include "decoshield/weakmeas.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace decoshield::entangle {

namespace {

constexpr double kMinPostSelection = 1e-14;

double attenuation(double c) { return std::min(1.0, 1.0 / (c * c)); }

void require_positive(double v, const char* name) {
    if (!(v > 0.0)) throw ParameterError(std::string(name) + " must be > 0, got " + std::to_string(v));
}

XStateCoefficients assemble(const EntangledInput& input, const ChannelSplit& s, double m1, double m2,
                            const GadParams& ch1, const GadParams& ch2) {
    const double wa = input.alpha_sq();
    const double wb = input.beta_sq();
    const double weight = m1 * m1 * m2 * m2;
    XStateCoefficients x{};
    x.a0 = s.a0 * wa;
    x.a1 = s.a1 * wb;
    x.b0 = s.b0 * wa;
    x.b1 = s.b1 * wb;
    x.c0 = s.c0 * wa;
    x.c1 = s.c1 * wb;
    x.d0 = s.d0 * wa;
    x.d1 = s.d1 * wb;
    x.weight = weight;
    x.a = x.a0 + x.a1 * weight;
    x.b = x.b0 + x.b1 * weight;
    x.c = x.c0 + x.c1 * weight;
    x.d = x.d0 + x.d1 * weight;
    x.e = input.alpha() * std::conj(input.beta()) * (m1 * m2) *
          std::sqrt((1.0 - ch1.r()) * (1.0 - ch2.r()));
    return x;
}

}  // namespace

EntangledInput::EntangledInput(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > tol::kAlgebraic) {
        throw ParameterError("|alpha|^2 + |beta|^2 must be 1, got " + std::to_string(norm));
    }
}

EntangledInput EntangledInput::bell() { return from_alpha_sq(0.5); }

EntangledInput EntangledInput::from_alpha_sq(double alpha_sq) {
    if (!(alpha_sq >= 0.0 && alpha_sq <= 1.0)) {
        throw ParameterError("|alpha|^2 must lie in [0, 1], got " + std::to_string(alpha_sq));
    }
    return EntangledInput(std::sqrt(alpha_sq), std::sqrt(1.0 - alpha_sq));
}

DensityMatrix EntangledInput::density() const {
    const std::array<Complex, 4> ket{alpha_, 0.0, 0.0, beta_};
    return DensityMatrix(ComplexMatrix::outer(ket));
}

ChannelSplit channel_split(const GadParams& ch1, const GadParams& ch2) {
    const double p1 = ch1.p(), r1 = ch1.r();
    const double p2 = ch2.p(), r2 = ch2.r();
    // Probability that qubit k, prepared in |0> (|1>), ends in |0> or |1>.
    const double stay0_1 = 1.0 - r1 + p1 * r1, flip0_1 = (1.0 - p1) * r1;
    const double stay0_2 = 1.0 - r2 + p2 * r2, flip0_2 = (1.0 - p2) * r2;
    const double stay1_1 = 1.0 - p1 * r1, flip1_1 = p1 * r1;
    const double stay1_2 = 1.0 - p2 * r2, flip1_2 = p2 * r2;
    return ChannelSplit{
        stay0_1 * stay0_2, flip1_1 * flip1_2,
        stay0_1 * flip0_2, flip1_1 * stay1_2,
        flip0_1 * stay0_2, stay1_1 * flip1_2,
        flip0_1 * flip0_2, stay1_1 * stay1_2,
    };
}

ComplexMatrix x_state_matrix(double a, double b, double c, double d, Complex e) {
    ComplexMatrix m(4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    m(0, 3) = e;
    m(3, 0) = std::conj(e);
    return m;
}

ComplexMatrix x_state_matrix(const XStateCoefficients& x) {
    return x_state_matrix(x.a, x.b, x.c, x.d, x.e);
}

XStateCoefficients channel_degraded_state(const EntangledInput& input, const GadParams& ch1,
                                          const GadParams& ch2) {
    return assemble(input, channel_split(ch1, ch2), 1.0, 1.0, ch1, ch2);
}

XStateCoefficients pre_measured_state(const EntangledInput& input, const GadParams& ch1,
                                      const GadParams& ch2, double m1, double m2) {
    if (!(m1 >= 0.0)) throw ParameterError("m1 must be >= 0, got " + std::to_string(m1));
    if (!(m2 >= 0.0)) throw ParameterError("m2 must be >= 0, got " + std::to_string(m2));
    return assemble(input, channel_split(ch1, ch2), m1, m2, ch1, ch2);
}

double concurrence_lambda1(const XStateCoefficients& x) {
    return 2.0 * (std::abs(x.e) - std::sqrt(x.b * x.c));
}

DensityMatrix ProtectedState::state() const {
    const double nn = n1 * n1 * n2 * n2;
    const ComplexMatrix raw = x_state_matrix(nn * coeffs.a, n1 * n1 * coeffs.b, n2 * n2 * coeffs.c,
                                             coeffs.d, (n1 * n2) * coeffs.e);
    return DensityMatrix::normalized(raw);
}

ProtectedState protected_state(const EntangledInput& input, const GadParams& ch1, const GadParams& ch2,
                               double m1, double m2, double n1, double n2) {
    require_positive(m1, "m1");
    require_positive(m2, "m2");
    require_positive(n1, "n1");
    require_positive(n2, "n2");
    const XStateCoefficients x = pre_measured_state(input, ch1, ch2, m1, m2);
    const double norm = n1 * n1 * n2 * n2 * x.a + n1 * n1 * x.b + n2 * n2 * x.c + x.d;
    const double prob = norm * attenuation(m1) * attenuation(n1) * attenuation(m2) * attenuation(n2);
    if (prob < kMinPostSelection) {
        throw StateError("post-selection impossible: outcome probability below 1e-14");
    }
    return {x, n1, n2, norm, prob};
}

double concurrence_lambda2(const XStateCoefficients& x, double n1, double n2) {
    const double denom = n1 * n1 * n2 * n2 * x.a + n1 * n1 * x.b + n2 * n2 * x.c + x.d;
    return 2.0 * n1 * n2 * (std::abs(x.e) - std::sqrt(x.b * x.c)) / denom;
}

PipelineOutcome run_pipeline(const EntangledInput& input, const GadParams& ch1, const GadParams& ch2,
                             double m1, double m2, double n1, double n2) {
    const PostSelected before = apply_postselected(WeakMeasurement::pre(m1, m2), input.density());
    const DensityMatrix damped =
        apply_local_channels(gad_channel(ch1), gad_channel(ch2), before.state);
    const PostSelected after = apply_postselected(WeakMeasurement::post(n1, n2), damped);
    return {after.state, before.prob * after.prob};
}

ReversalStrengths optimal_reversal(const XStateCoefficients& x) {
    if (!(x.a > 0.0 && x.b > 0.0 && x.c > 0.0)) {
        throw ParameterError("optimal reversal strengths need A, B, C > 0");
    }
    return {std::pow(x.c * x.d / (x.a * x.b), 0.25), std::pow(x.b * x.d / (x.a * x.c), 0.25)};
}

double lambda2_max(const GadParams& ch1, const GadParams& ch2) {
    const double p1 = ch1.p(), r1 = ch1.r();
    const double p2 = ch2.p(), r2 = ch2.r();
    const double num = std::sqrt((1.0 - r1) * (1.0 - r2)) -
                       r1 * std::sqrt(p1 * (1.0 - p1) * (1.0 - r2 * p2) * (1.0 - r2 + r2 * p2)) -
                       r2 * std::sqrt(p2 * (1.0 - p2) * (1.0 - r1 * p1) * (1.0 - r1 + r1 * p1));
    const double g1 = r1 * std::sqrt(p1 * (1.0 - p1)) + std::sqrt((1.0 - r1 * p1) * (1.0 - r1 + r1 * p1));
    const double g2 = r2 * std::sqrt(p2 * (1.0 - p2)) + std::sqrt((1.0 - r2 * p2) * (1.0 - r2 + r2 * p2));
    return num / (g1 * g2);
}

ConcurrenceReport optimal_parameters(const EntangledInput& input, const GadParams& ch1,
                                     const GadParams& ch2) {
    if (ch1.p() == 0.0 || ch2.p() == 0.0) {
        throw ParameterError("optimal parameters diverge at p = 0");
    }
    const ChannelSplit s = channel_split(ch1, ch2);
    const XStateCoefficients unprotected = channel_degraded_state(input, ch1, ch2);

    ConcurrenceReport rep{};
    rep.lambda1 = concurrence_lambda1(unprotected);
    rep.lambda2_max = lambda2_max(ch1, ch2);

    const double bc_alpha = s.b0 * s.c0, bc_beta = s.b1 * s.c1;
    const double ad_alpha = s.a0 * s.d0, ad_beta = s.a1 * s.d1;
    if (bc_beta == 0.0 || ad_beta == 0.0) {
        rep.degenerate_h = true;
        rep.h = rep.h_from_ad = 1.0;
    } else {
        rep.h = std::sqrt(bc_alpha / bc_beta);
        rep.h_from_ad = std::sqrt(ad_alpha / ad_beta);
    }
    rep.alpha_sq_opt = 1.0 / (1.0 + rep.h);

    if (input.alpha_sq() == 0.0 || input.beta_sq() == 0.0) {
        rep.zero_entanglement = true;
        rep.m_opt = rep.n1_opt = rep.n2_opt = 1.0;
        rep.lambda2 = rep.lambda1;
        rep.concurrence = 0.0;
        rep.success_prob = 1.0;
        return rep;
    }

    rep.concurrence = std::max(0.0, rep.lambda2_max);
    if (!rep.degenerate_h && rep.h == 0.0) {
        rep.projective_limit = true;
        rep.m_opt = rep.n1_opt = rep.n2_opt = 0.0;
        rep.lambda2 = rep.lambda2_max;
        rep.success_prob = 0.0;
        return rep;
    }

    // m^2 = h |alpha|^2 / |beta|^2; with m2 = 1 only m1 m2 matters.
    rep.m_opt = std::sqrt(rep.h) * std::abs(input.alpha()) / std::abs(input.beta());
    const XStateCoefficients x = assemble(input, s, rep.m_opt, 1.0, ch1, ch2);
    if (x.b > 0.0 && x.c > 0.0) {
        const ReversalStrengths n = optimal_reversal(x);
        rep.n1_opt = n.n1;
        rep.n2_opt = n.n2;
    } else {
        // B or C vanishes: only n1 n2 = sqrt(D / A) is fixed.
        rep.n1_opt = rep.n2_opt = std::pow(x.d / x.a, 0.25);
    }
    rep.lambda2 = concurrence_lambda2(x, rep.n1_opt, rep.n2_opt);
    const double norm = rep.n1_opt * rep.n1_opt * rep.n2_opt * rep.n2_opt * x.a +
                        rep.n1_opt * rep.n1_opt * x.b + rep.n2_opt * rep.n2_opt * x.c + x.d;
    rep.success_prob =
        norm * attenuation(rep.m_opt) * attenuation(rep.n1_opt) * attenuation(rep.n2_opt);
    return rep;
}

}  // namespace decoshield::entangle

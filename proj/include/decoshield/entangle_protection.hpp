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

// Weak-measurement protection of the entangled pair alpha|00> + beta|11>
// whose halves travel through independent GAD channels.
//
// Qubit 1 is the most significant tensor factor, so the X-state populations
// are ordered |00>, |01>, |10>, |11> -> a, b, c, d and e is the |00><11|
// coherence.

#include "decoshield/channels.hpp"
#include "decoshield/linalg.hpp"

namespace decoshield::entangle {

class EntangledInput {
public:
    /// Throws ParameterError unless |alpha|^2 + |beta|^2 = 1 within 1e-12.
    EntangledInput(Complex alpha, Complex beta);

    static EntangledInput bell();
    /// Real non-negative amplitudes with |alpha|^2 = alpha_sq.
    static EntangledInput from_alpha_sq(double alpha_sq);

    Complex alpha() const { return alpha_; }
    Complex beta() const { return beta_; }
    double alpha_sq() const { return std::norm(alpha_); }
    double beta_sq() const { return std::norm(beta_); }

    DensityMatrix density() const;

private:
    Complex alpha_;
    Complex beta_;
};

/// Channel-only populations per unit |alpha|^2 (suffix 0) and per unit
/// |beta|^2 (suffix 1). Independent of the input amplitudes.
struct ChannelSplit {
    double a0, a1, b0, b1, c0, c1, d0, d1;
};

ChannelSplit channel_split(const GadParams& ch1, const GadParams& ch2);

/// X-state entries. For the channel-only state these are a..e; after the
/// pre-channel measurement they are the A..E of the protected state, before
/// the post-channel measurement and normalization.
struct XStateCoefficients {
    double a, b, c, d;
    Complex e;
    /// Split of a..d into the part carried by |00> (suffix 0, equal to the
    /// channel split times |alpha|^2) and the part carried by |11> (suffix 1,
    /// channel split times |beta|^2): a = a0 + a1 * weight, and so on.
    double a0, a1, b0, b1, c0, c1, d0, d1;
    /// m1^2 m2^2; 1 for the channel-only state.
    double weight;
};

/// Unnormalized 4x4 X matrix with the given entries.
ComplexMatrix x_state_matrix(double a, double b, double c, double d, Complex e);
ComplexMatrix x_state_matrix(const XStateCoefficients& x);

/// State of the pair after both channels, without measurements.
XStateCoefficients channel_degraded_state(const EntangledInput& input, const GadParams& ch1,
                                          const GadParams& ch2);

/// A..E after M = diag(1,m1) x diag(1,m2) and both channels. Strengths may
/// be 0 here (the projective limit of M).
XStateCoefficients pre_measured_state(const EntangledInput& input, const GadParams& ch1,
                                      const GadParams& ch2, double m1, double m2);

/// 2 (|e| - sqrt(bc)); the concurrence is max{0, Lambda1}.
double concurrence_lambda1(const XStateCoefficients& x);

struct ProtectedState {
    /// A..E: the state after M and both channels.
    XStateCoefficients coeffs;
    double n1;
    double n2;
    /// n1^2 n2^2 A + n1^2 B + n2^2 C + D.
    double normalization;
    /// normalization * prod over {m1, n1, m2, n2} of min{1, 1/c^2}.
    double success_prob;

    /// The post-selected output state.
    DensityMatrix state() const;
};

/// Closed-form protected state for M = diag(1,m1) x diag(1,m2) and
/// N = diag(n1,1) x diag(n2,1). Throws ParameterError unless every strength
/// is > 0 and StateError when the post-selection probability is below 1e-14.
ProtectedState protected_state(const EntangledInput& input, const GadParams& ch1, const GadParams& ch2,
                               double m1, double m2, double n1, double n2);

/// 2 n1 n2 (|E| - sqrt(BC)) / (n1^2 n2^2 A + n1^2 B + n2^2 C + D).
double concurrence_lambda2(const XStateCoefficients& x, double n1, double n2);

struct PipelineOutcome {
    DensityMatrix state;
    double success_prob;
};

/// N o (GAD1 x GAD2) o M through `channels` and `weakmeas`.
PipelineOutcome run_pipeline(const EntangledInput& input, const GadParams& ch1, const GadParams& ch2,
                             double m1, double m2, double n1, double n2);

struct ReversalStrengths {
    double n1;
    double n2;
};

/// n1 = (CD/AB)^(1/4), n2 = (BD/AC)^(1/4). Requires A, B, C > 0.
ReversalStrengths optimal_reversal(const XStateCoefficients& x);

/// The maximum of Lambda2 over all strengths; depends on the channels only.
/// When it is negative it is only a stationary value: Lambda2 then tends to 0
/// from below as n1, n2 -> 0, and the concurrence is 0 in both cases.
double lambda2_max(const GadParams& ch1, const GadParams& ch2);

struct ConcurrenceReport {
    double lambda1;
    /// Lambda2 evaluated at the reported strengths.
    double lambda2;
    double lambda2_max;
    /// max{0, lambda2_max}, or 0 for a product input.
    double concurrence;
    double m_opt;
    double n1_opt;
    double n2_opt;
    /// sqrt(b0 c0 / (b1 c1)).
    double h;
    /// sqrt(a0 d0 / (a1 d1)); equal to h.
    double h_from_ad;
    double alpha_sq_opt;
    /// Success probability at the input amplitudes with all optimal strengths.
    double success_prob;
    /// Set when alpha or beta vanishes.
    bool zero_entanglement = false;
    /// Set when h = 0 (some p = 1): the optimum needs m, n1, n2 -> 0 and the
    /// success probability tends to 0.
    bool projective_limit = false;
    /// Set when h is 0/0 (a channel with r = 0): Lambda2 at optimal n1, n2 no
    /// longer depends on m and h = 1 is used.
    bool degenerate_h = false;
};

/// Optimal strengths (m2 fixed to 1), maximal concurrence and success
/// probability. Requires p1, p2 > 0.
ConcurrenceReport optimal_parameters(const EntangledInput& input, const GadParams& ch1,
                                     const GadParams& ch2);

}  // namespace decoshield::entangle

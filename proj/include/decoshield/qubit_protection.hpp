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

// Weak-measurement protection of a single qubit sent through a GAD channel:
// M = diag(1, m) before the channel, N = diag(n, 1) after it.

#include "decoshield/channels.hpp"
#include "decoshield/linalg.hpp"

namespace decoshield::qubit {

struct ProtectionResult {
    double fidelity;
    double success_prob;
    DensityMatrix output_state;
    /// Trace T of N E(M rho M^dagger) N^dagger times two (raw strengths).
    double normalization;
};

struct OptimalStrengths {
    double m;
    double n;
    double f_max;
    /// Set at p = 1, where the optimum is reached only in the projective limit m, n -> 0.
    bool projective = false;
};

struct AverageFidelityReport {
    double f0;
    double f1;
    double fe;
    double favg;
};

/// Outcome of the generic Kraus + measurement pipeline.
struct PipelineOutcome {
    DensityMatrix state;
    double success_prob;
};

/// Fidelity of an equatorial state after the bare channel, 1/2 (1 + sqrt(1 - r)).
double baseline_fidelity(const GadParams& params);

/// Closed-form fidelity of an equatorial state with measurement strengths m, n.
double equatorial_fidelity(const GadParams& params, double m, double n);

/// Closed-form normalization T for an equatorial input.
double normalization(const GadParams& params, double m, double n);

/// (T/2) min{1, 1/m^2} min{1, 1/n^2}.
double success_probability(const GadParams& params, double m, double n);

/// Closed-form protected state and statistics for the equatorial input with
/// azimuth phi. Throws ParameterError unless m, n > 0.
ProtectionResult protect_equatorial(const GadParams& params, double m, double n, double phi);

/// N o GAD o M applied to an arbitrary input through `channels` and
/// `weakmeas`; the reference route for every closed form in this module.
PipelineOutcome run_pipeline(const GadParams& params, double m, double n, const DensityMatrix& rho);

/// Strengths that maximize the equatorial fidelity, with the maximum.
/// Requires 0 < p <= 1 and not (p = 1 and r = 1).
OptimalStrengths optimal_strengths(const GadParams& params);

/// sqrt((1 - rp)(1 - r + rp)) + r sqrt(p (1 - p)); the optimum is
/// 1/2 (1 + sqrt(1 - r) / G).
double g_value(const GadParams& params);

/// BB84 error rate averaged over the four equatorial signal states, each
/// decoded against its conjugate partner, computed through run_pipeline.
double bb84_error_rate(const GadParams& params, double m, double n);

/// Closed-form fidelities for |0>, |1> and the equatorial states together
/// with the six-state average (f0 + f1 + 4 fe) / 6.
AverageFidelityReport average_fidelity_six(const GadParams& params, double m, double n);

/// The same report with every term computed through run_pipeline on the six
/// cardinal states.
AverageFidelityReport average_fidelity_six_pipeline(const GadParams& params, double m, double n);

/// Six-state average without weak measurements, 1/3 + (1 + sqrt(1 - r))^2 / 6.
double baseline_average_fidelity(const GadParams& params);

/// Strengths maximizing the six-state average. These coincide with
/// optimal_strengths(); f_max is the average evaluated there.
OptimalStrengths optimal_average(const GadParams& params);

}  // namespace decoshield::qubit

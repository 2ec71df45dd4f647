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

// Amplitude damping and generalized amplitude damping channels.

#include "decoshield/linalg.hpp"

#include <vector>

namespace decoshield {

/// Generalized amplitude damping parameters. `p` weights relaxation towards
/// |0> against excitation towards |1>; `r` is the damping strength. The
/// thermal fixed point is diag(p, 1 - p).
class GadParams {
public:
    /// Throws ParameterError unless both values lie in [0, 1].
    GadParams(double p, double r);

    double p() const { return p_; }
    double r() const { return r_; }

private:
    double p_;
    double r_;
};

/// Ordered Kraus operators of a single-qubit channel.
struct KrausChannel {
    std::vector<ComplexMatrix> operators;

    static KrausChannel identity();
};

/// Zero-temperature damping pair {E0, E1}.
KrausChannel ad_channel(double r);

/// The four GAD operators E0..E3. At p = 1 the last two vanish and the
/// first two are the amplitude damping pair.
KrausChannel gad_channel(const GadParams& params);

/// sum_i E_i rho E_i^dagger.
DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho);

/// Unnormalized variant used inside pipelines where the input is not a state.
ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho);

/// Acts with `ch` on one qubit of a two-qubit operator (qubit 0 is the most
/// significant tensor factor).
ComplexMatrix apply_on_qubit(const KrausChannel& ch, const ComplexMatrix& rho, int qubit);

/// (ch1 x ch2)(rho) by two sequential single-qubit applications.
ComplexMatrix apply_local_channels(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const ComplexMatrix& rho);
DensityMatrix apply_local_channels(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const DensityMatrix& rho);

/// Evolves the qubit jointly with a two-qubit environment prepared in |00>
/// under the unitary dilation of the GAD channel, then traces the
/// environment out.
DensityMatrix apply_via_dilation(const GadParams& params, const DensityMatrix& rho);

/// max_ij |(sum_i E_i^dagger E_i - I)_ij|.
double check_trace_preserving(const KrausChannel& ch);

}  // namespace decoshield

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

#include "decoshield/channels.hpp"

#include <cmath>
#include <string>

namespace decoshield {

namespace {

void require_unit_interval(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
    }
}

}  // namespace

GadParams::GadParams(double p, double r) : p_(p), r_(r) {
    require_unit_interval(p, "p");
    require_unit_interval(r, "r");
}

KrausChannel KrausChannel::identity() { return KrausChannel{{ComplexMatrix::identity(2)}}; }

KrausChannel ad_channel(double r) {
    require_unit_interval(r, "r");
    return KrausChannel{{
        ComplexMatrix{1.0, 0.0, 0.0, std::sqrt(1.0 - r)},
        ComplexMatrix{0.0, std::sqrt(r), 0.0, 0.0},
    }};
}

KrausChannel gad_channel(const GadParams& params) {
    const double sp = std::sqrt(params.p());
    const double sq = std::sqrt(1.0 - params.p());
    const double sr = std::sqrt(params.r());
    const double sd = std::sqrt(1.0 - params.r());
    return KrausChannel{{
        ComplexMatrix{sp, 0.0, 0.0, sp * sd},
        ComplexMatrix{0.0, sp * sr, 0.0, 0.0},
        ComplexMatrix{sq * sd, 0.0, 0.0, sq},
        ComplexMatrix{0.0, 0.0, sq * sr, 0.0},
    }};
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho) {
    ComplexMatrix out(rho.dim());
    for (const ComplexMatrix& e : ch.operators) {
        out += conjugate_by(e, rho).matrix;
    }
    return out;
}

DensityMatrix apply_channel(const KrausChannel& ch, const DensityMatrix& rho) {
    return DensityMatrix(apply_channel(ch, rho.matrix()));
}

ComplexMatrix apply_on_qubit(const KrausChannel& ch, const ComplexMatrix& rho, int qubit) {
    if (rho.dim() != 4) throw DimensionError("apply_on_qubit: two-qubit operator required");
    if (qubit != 0 && qubit != 1) throw DimensionError("apply_on_qubit: qubit must be 0 or 1");
    const ComplexMatrix id = ComplexMatrix::identity(2);
    ComplexMatrix out(4);
    for (const ComplexMatrix& e : ch.operators) {
        const ComplexMatrix lifted = qubit == 0 ? tensor(e, id) : tensor(id, e);
        out += conjugate_by(lifted, rho).matrix;
    }
    return out;
}

ComplexMatrix apply_local_channels(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const ComplexMatrix& rho) {
    return apply_on_qubit(ch2, apply_on_qubit(ch1, rho, 0), 1);
}

DensityMatrix apply_local_channels(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const DensityMatrix& rho) {
    return DensityMatrix(apply_local_channels(ch1, ch2, rho.matrix()));
}

DensityMatrix apply_via_dilation(const GadParams& params, const DensityMatrix& rho) {
    if (rho.dim() != 2) throw DimensionError("apply_via_dilation: single-qubit state required");
    const double p = params.p();
    const double r = params.r();

    // Isometry from the system onto system x environment, row index
    // 4 * s + e with environment kets |00>, |01>, |10>, |11> in that order.
    Eigen::Matrix<Complex, 8, 2> iso = Eigen::Matrix<Complex, 8, 2>::Zero();
    constexpr int kEnv00 = 0, kEnv01 = 1, kEnv10 = 2, kEnv11 = 3;
    auto row = [](int s, int e) { return 4 * s + e; };
    // |0>|00> -> sqrt(p)|0>|00> + sqrt(1-p)sqrt(1-r)|0>|01> + sqrt(1-p)sqrt(r)|1>|11>
    iso(row(0, kEnv00), 0) = std::sqrt(p);
    iso(row(0, kEnv01), 0) = std::sqrt(1.0 - p) * std::sqrt(1.0 - r);
    iso(row(1, kEnv11), 0) = std::sqrt(1.0 - p) * std::sqrt(r);
    // |1>|00> -> sqrt(p)sqrt(1-r)|1>|00> + sqrt(pr)|0>|10> + sqrt(1-p)|1>|01>
    iso(row(1, kEnv00), 1) = std::sqrt(p) * std::sqrt(1.0 - r);
    iso(row(0, kEnv10), 1) = std::sqrt(p * r);
    iso(row(1, kEnv01), 1) = std::sqrt(1.0 - p);

    const Eigen::Matrix2cd in = rho.matrix().eigen();
    const Eigen::Matrix<Complex, 8, 8> joint = iso * in * iso.adjoint();

    ComplexMatrix out(2);
    for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
            Complex acc = 0.0;
            for (int e = 0; e < 4; ++e) acc += joint(row(s, e), row(t, e));
            out(s, t) = acc;
        }
    }
    return DensityMatrix(out);
}

double check_trace_preserving(const KrausChannel& ch) {
    if (ch.operators.empty()) return 1.0;
    const int dim = ch.operators.front().dim();
    ComplexMatrix sum(dim);
    for (const ComplexMatrix& e : ch.operators) sum += e.adjoint() * e;
    return sum.max_abs_diff(ComplexMatrix::identity(dim));
}

}  // namespace decoshield

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

// Derivative-free maximizers used to check closed-form optima.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace decoshield::verify {

using Objective = std::function<double(std::span<const double>)>;

/// Axis-aligned box with a lattice resolution per dimension.
class SearchBox {
public:
    /// Throws std::invalid_argument unless all vectors have the same length,
    /// lower < upper and resolution >= 2 in every dimension.
    SearchBox(std::vector<double> lower, std::vector<double> upper, std::vector<int> resolution);

    /// Same bounds and resolution in every one of `dims` dimensions.
    static SearchBox cube(std::size_t dims, double lower, double upper, int resolution);

    std::size_t dims() const { return lower_.size(); }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<int>& resolution() const { return resolution_; }

    bool contains(std::span<const double> x) const;
    /// Coordinate of lattice index k along dimension d.
    double lattice(std::size_t d, int k) const;

private:
    std::vector<double> lower_;
    std::vector<double> upper_;
    std::vector<int> resolution_;
};

struct SearchResult {
    std::vector<double> argmax;
    double value;
    long evaluations;
    /// Simplex search only: stopped on the evaluation budget, not on size.
    bool budget_exhausted = false;
};

/// Evaluates every lattice point of the box in lexicographic order; the first
/// maximal point wins ties. Exceptions and NaN from the objective count as -inf.
SearchResult grid_maximize(const Objective& objective, const SearchBox& box);

struct SimplexOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double min_diameter = 1e-9;
    long max_evaluations = 100000;
    /// Initial edge length as a fraction of each box width.
    double initial_step = 0.05;
};

/// Nelder-Mead ascent from `start`. Points outside the box score -inf, so the
/// search never leaves it. The result is never worse than the start.
SearchResult simplex_maximize(const Objective& objective, std::span<const double> start,
                              const SearchBox& box, const SimplexOptions& options = {});

/// max_i |f(x + h e_i) - f(x - h e_i)| / (2h).
double stationarity_check(const Objective& objective, std::span<const double> point, double step);

}  // namespace decoshield::verify

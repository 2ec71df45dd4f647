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

#include "decoshield/numeric_verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace decoshield::verify {

namespace {

constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

double safe_eval(const Objective& f, std::span<const double> x) {
    try {
        const double v = f(x);
        return std::isnan(v) ? kMinusInf : v;
    } catch (const std::exception&) {
        return kMinusInf;
    }
}

}  // namespace

SearchBox::SearchBox(std::vector<double> lower, std::vector<double> upper, std::vector<int> resolution)
    : lower_(std::move(lower)), upper_(std::move(upper)), resolution_(std::move(resolution)) {
    if (lower_.empty() || lower_.size() != upper_.size() || lower_.size() != resolution_.size()) {
        throw std::invalid_argument("search box: bounds and resolution must have equal, non-zero length");
    }
    for (std::size_t d = 0; d < lower_.size(); ++d) {
        if (!(lower_[d] < upper_[d])) throw std::invalid_argument("search box: lower must be < upper");
        if (resolution_[d] < 2) throw std::invalid_argument("search box: resolution must be >= 2");
    }
}

SearchBox SearchBox::cube(std::size_t dims, double lower, double upper, int resolution) {
    return SearchBox(std::vector<double>(dims, lower), std::vector<double>(dims, upper),
                     std::vector<int>(dims, resolution));
}

bool SearchBox::contains(std::span<const double> x) const {
    if (x.size() != dims()) return false;
    for (std::size_t d = 0; d < dims(); ++d) {
        if (!(x[d] >= lower_[d] && x[d] <= upper_[d])) return false;
    }
    return true;
}

double SearchBox::lattice(std::size_t d, int k) const {
    if (k == resolution_[d] - 1) return upper_[d];
    return lower_[d] + (upper_[d] - lower_[d]) * k / (resolution_[d] - 1);
}

SearchResult grid_maximize(const Objective& objective, const SearchBox& box) {
    const std::size_t dims = box.dims();
    std::vector<int> index(dims, 0);
    std::vector<double> x(dims);
    SearchResult best{{}, kMinusInf, 0};
    while (true) {
        for (std::size_t d = 0; d < dims; ++d) x[d] = box.lattice(d, index[d]);
        const double v = safe_eval(objective, x);
        ++best.evaluations;
        if (v > best.value || best.argmax.empty()) {
            best.value = v;
            best.argmax = x;
        }
        // Odometer increment with the last dimension fastest.
        std::size_t d = dims;
        while (d > 0) {
            --d;
            if (++index[d] < box.resolution()[d]) break;
            index[d] = 0;
            if (d == 0) return best;
        }
    }
}

SearchResult simplex_maximize(const Objective& objective, std::span<const double> start,
                              const SearchBox& box, const SimplexOptions& options) {
    const std::size_t n = box.dims();
    if (start.size() != n || !box.contains(start)) {
        throw std::invalid_argument("simplex_maximize: start must lie inside the box");
    }
    long evaluations = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evaluations;
        return box.contains(x) ? safe_eval(objective, x) : kMinusInf;
    };

    std::vector<std::vector<double>> vertex(n + 1, std::vector<double>(start.begin(), start.end()));
    for (std::size_t d = 0; d < n; ++d) {
        const double step = options.initial_step * (box.upper()[d] - box.lower()[d]);
        vertex[d + 1][d] += step;
        if (vertex[d + 1][d] > box.upper()[d]) vertex[d + 1][d] = start[d] - step;
    }
    std::vector<double> value(n + 1);
    for (std::size_t i = 0; i <= n; ++i) value[i] = eval(vertex[i]);

    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n);
    auto along = [&](const std::vector<double>& from, double coef, const std::vector<double>& to) {
        // from + coef * (from - to)
        std::vector<double> out(n);
        for (std::size_t d = 0; d < n; ++d) out[d] = from[d] + coef * (from[d] - to[d]);
        return out;
    };

    bool exhausted = false;
    while (true) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return value[a] > value[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        double diameter = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t d = 0; d < n; ++d) {
                diameter = std::max(diameter, std::abs(vertex[i][d] - vertex[best][d]));
            }
        }
        if (diameter < options.min_diameter) break;
        if (evaluations >= options.max_evaluations) {
            exhausted = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t d = 0; d < n; ++d) centroid[d] += vertex[i][d] / static_cast<double>(n);
        }

        const auto reflected = along(centroid, options.reflection, vertex[worst]);
        const double f_reflected = eval(reflected);
        if (f_reflected > value[best]) {
            const auto expanded = along(centroid, options.expansion, vertex[worst]);
            const double f_expanded = eval(expanded);
            if (f_expanded > f_reflected) {
                vertex[worst] = expanded;
                value[worst] = f_expanded;
            } else {
                vertex[worst] = reflected;
                value[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected > value[second_worst]) {
            vertex[worst] = reflected;
            value[worst] = f_reflected;
            continue;
        }

        bool accepted = false;
        if (f_reflected > value[worst]) {
            const auto outside = along(centroid, options.contraction, vertex[worst]);
            const double f_outside = eval(outside);
            if (f_outside >= f_reflected) {
                vertex[worst] = outside;
                value[worst] = f_outside;
                accepted = true;
            }
        } else {
            const auto inside = along(centroid, -options.contraction, vertex[worst]);
            const double f_inside = eval(inside);
            if (f_inside > value[worst]) {
                vertex[worst] = inside;
                value[worst] = f_inside;
                accepted = true;
            }
        }
        if (accepted) continue;

        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t d = 0; d < n; ++d) {
                vertex[i][d] = vertex[best][d] + options.shrink * (vertex[i][d] - vertex[best][d]);
            }
            value[i] = eval(vertex[i]);
        }
    }

    const std::size_t best = static_cast<std::size_t>(
        std::max_element(value.begin(), value.end()) - value.begin());
    return {vertex[best], value[best], evaluations, exhausted};
}

double stationarity_check(const Objective& objective, std::span<const double> point, double step) {
    std::vector<double> x(point.begin(), point.end());
    double worst = 0.0;
    for (std::size_t d = 0; d < x.size(); ++d) {
        const double centre = x[d];
        x[d] = centre + step;
        const double up = objective(x);
        x[d] = centre - step;
        const double down = objective(x);
        x[d] = centre;
        worst = std::max(worst, std::abs(up - down) / (2.0 * step));
    }
    return worst;
}

}  // namespace decoshield::verify

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

// Command-line front end: CSV sweeps, optimum queries and oracle checks.

#include <iosfwd>
#include <string>
#include <vector>

namespace decoshield::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// `lo:hi:steps`, meaning `steps` evenly spaced points from lo to hi inclusive.
struct Range {
    double lo;
    double hi;
    int steps;

    std::vector<double> points() const;
};

/// Throws std::invalid_argument on malformed text, steps < 2 or lo > hi.
Range parse_range(const std::string& text);

/// One CSV cell: 12 significant digits, '.' decimal separator.
std::string format_number(double v);

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace decoshield::cli

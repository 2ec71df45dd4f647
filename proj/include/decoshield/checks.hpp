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

// Oracle cross-checks run by `decoshield verify`.

#include <string>
#include <vector>

namespace decoshield::checks {

struct CheckResult {
    std::string name;
    bool passed;
    std::string detail;
};

/// Every closed form against its independent route (Kraus pipeline,
/// dilation, Wootters eigen-route, grid and simplex search).
std::vector<CheckResult> run_all();

}  // namespace decoshield::checks

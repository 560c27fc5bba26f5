/*
 * Copyright 2026 The photonmesh Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PHOTONMESH_VERIFICATION_H
#define PHOTONMESH_VERIFICATION_H

#include <string>
#include <vector>

namespace photonmesh {

/// Outcome of one end-to-end reproduction check.
struct CheckResult {
    int id = 0;
    std::string name;
    bool passed = false;
    /// Key numbers behind the verdict.
    std::string detail;
    double seconds = 0.0;
    /// Runtime budget; 0 means none. Exceeding it fails the check.
    double budget_seconds = 0.0;
};

/// Check ids 1..check_count().
int check_count();

/// Runs one check. Exceptions inside a check turn into a failure. Throws
/// RangeError for an unknown id.
CheckResult run_check(int id);

/// Runs checks in order; with fail_fast, stops after the first failure.
std::vector<CheckResult> run_all_checks(bool fail_fast);

}  // namespace photonmesh

#endif

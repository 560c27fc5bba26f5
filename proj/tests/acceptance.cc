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

// One PASS/FAIL line per acceptance criterion. Every criterion runs even
// after a failure; the exit status is nonzero if any failed.

#include <cstdio>

#include "photonmesh/verification.h"

int main() {
    int failures = 0;
    for (int id = 1; id <= photonmesh::check_count(); id++) {
        const photonmesh::CheckResult r = photonmesh::run_check(id);
        failures += r.passed ? 0 : 1;
        std::printf("%s criterion %d: %s (%.3f s) | %s\n", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
                    r.seconds, r.detail.c_str());
    }
    std::printf("%d of %d criteria passed\n", photonmesh::check_count() - failures, photonmesh::check_count());
    return failures == 0 ? 0 : 1;
}

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

#ifndef PHOTONMESH_RECORDS_H
#define PHOTONMESH_RECORDS_H

#include <optional>
#include <string>
#include <vector>

#include "photonmesh/compare.h"
#include "photonmesh/distillation.h"

namespace photonmesh {

/// Every record line carries {"schema_version": kRecordSchemaVersion, "record": <kind>}.
inline constexpr int kRecordSchemaVersion = 1;

/// One JSON object per line, keys in a fixed order, no trailing newline.
/// Kind "distillation": protocol, m, epsilon_in, herald, success_probability,
/// epsilon_out, visibility_out, slope (null when not fitted).
std::string distillation_record(
    const std::string &protocol, int m, const DistillationOutcome &outcome, std::optional<double> slope);

/// Kind "ztl": one line per outcome.
std::vector<std::string> suppression_records(const SuppressionReport &report);

/// Kind "architecture": one line per row.
std::vector<std::string> comparison_records(const ComparisonReport &report);

}  // namespace photonmesh

#endif

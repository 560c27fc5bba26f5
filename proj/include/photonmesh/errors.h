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

#ifndef PHOTONMESH_ERRORS_H
#define PHOTONMESH_ERRORS_H

#include <stdexcept>
#include <string>

namespace photonmesh {

/// Shape mismatch: non-square input, zero dimension, mismatched mode counts.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// An input violated a mathematical precondition (non-unitary, non-PSD, ...).
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Input and output photon numbers differ.
struct ConservationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A scalar parameter is outside its allowed interval.
struct RangeError : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Two elements in the same circuit layer share a mode.
struct LayoutError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A problem is too large for the requested engine or mesh.
struct CapacityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Heralding on an event whose probability is numerically zero.
struct DegenerateHeraldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed serialized input.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace photonmesh

#endif

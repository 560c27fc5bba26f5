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

#ifndef PHOTONMESH_NUMERICS_H
#define PHOTONMESH_NUMERICS_H

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace photonmesh {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Default tolerance for "is this matrix unitary" checks throughout the library.
inline constexpr double kUnitaryTolerance = 1e-10;

/// Largest matrix accepted by `permanent`.
inline constexpr int kMaxPermanentSize = 20;

/// Matrix permanent by Ryser's inclusion-exclusion formula with Gray-code
/// ordering of the column subsets, O(2^n n). The empty matrix has permanent 1.
///
/// Throws DimensionError for non-square input or n > kMaxPermanentSize.
Complex permanent(const ComplexMatrix &m);

/// max |(M^dagger M - I)_ij| <= tol. Non-square matrices are never unitary.
bool is_unitary(const ComplexMatrix &m, double tol = kUnitaryTolerance);

/// Entrywise max-norm of a - b. Throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);

/// Haar-random m x m unitary: QR of a complex Ginibre matrix with the phases of
/// R's diagonal moved into Q. Deterministic in (m, seed).
ComplexMatrix random_unitary(int m, std::uint64_t seed);

/// Multiplies `m` by the phase that makes the first nonzero entry of its first
/// column real and positive. Used to compare matrices modulo a global phase.
ComplexMatrix normalize_global_phase(const ComplexMatrix &m);

/// max|c a - b| where c is the unit phase of the Frobenius inner product <a, b>.
/// Zero exactly when a and b differ by a global phase.
double phase_insensitive_distance(const ComplexMatrix &a, const ComplexMatrix &b);

}  // namespace photonmesh

#endif

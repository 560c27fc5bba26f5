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

#include "photonmesh/numerics.h"

#include <bit>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "photonmesh/errors.h"

namespace photonmesh {

Complex permanent(const ComplexMatrix &m) {
    if (m.rows() != m.cols()) {
        throw DimensionError(
            "permanent requires a square matrix, got " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const int n = static_cast<int>(m.rows());
    if (n > kMaxPermanentSize) {
        throw DimensionError("permanent size " + std::to_string(n) + " exceeds " + std::to_string(kMaxPermanentSize));
    }
    if (n == 0) {
        return Complex{1.0, 0.0};
    }

    // Ryser: perm(M) = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} M_ij.
    // Walk the subsets in Gray-code order so each step toggles one column.
    std::vector<Complex> row_sums(n, Complex{0.0, 0.0});
    Complex total{0.0, 0.0};
    const std::uint64_t subsets = std::uint64_t{1} << n;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < subsets; k++) {
        const int col = std::countr_zero(k);
        const std::uint64_t bit = std::uint64_t{1} << col;
        gray ^= bit;
        if (gray & bit) {
            for (int i = 0; i < n; i++) {
                row_sums[i] += m(i, col);
            }
        } else {
            for (int i = 0; i < n; i++) {
                row_sums[i] -= m(i, col);
            }
        }
        Complex prod = row_sums[0];
        for (int i = 1; i < n; i++) {
            prod *= row_sums[i];
        }
        if (std::popcount(gray) % 2 == 1) {
            total -= prod;
        } else {
            total += prod;
        }
    }
    return (n % 2 == 1) ? -total : total;
}

bool is_unitary(const ComplexMatrix &m, double tol) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        return false;
    }
    ComplexMatrix gram = m.adjoint() * m;
    gram -= ComplexMatrix::Identity(m.rows(), m.cols());
    return gram.cwiseAbs().maxCoeff() <= tol;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("max_abs_diff shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix random_unitary(int m, std::uint64_t seed) {
    if (m <= 0) {
        throw DimensionError("random_unitary requires m >= 1, got " + std::to_string(m));
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(m, m);
    for (int i = 0; i < m; i++) {
        for (int j = 0; j < m; j++) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = Complex{re, im} / std::sqrt(2.0);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix &r = qr.matrixQR();
    for (int j = 0; j < m; j++) {
        const Complex d = r(j, j);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(j) *= d / mag;
        }
    }
    return q;
}

ComplexMatrix normalize_global_phase(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.rows(); i++) {
        const Complex v = m.cols() > 0 ? m(i, 0) : Complex{};
        if (std::abs(v) > 1e-12) {
            return m * (std::conj(v) / std::abs(v));
        }
    }
    return m;
}

double phase_insensitive_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError("phase_insensitive_distance shape mismatch");
    }
    // Align with the phase of <a, b>_F; robust even when column 1 has tiny entries.
    const Complex overlap = (a.conjugate().cwiseProduct(b)).sum();
    const Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    return max_abs_diff(a * phase, b);
}

}  // namespace photonmesh

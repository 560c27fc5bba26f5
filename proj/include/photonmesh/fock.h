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

#ifndef PHOTONMESH_FOCK_H
#define PHOTONMESH_FOCK_H

#include <compare>
#include <initializer_list>
#include <string>
#include <vector>

#include "photonmesh/numerics.h"

namespace photonmesh {

/// Photon count per spatial mode. Mode indices are 0-based in code; reports
/// print them 1-based.
class OccupationVector {
   public:
    OccupationVector() = default;
    explicit OccupationVector(std::vector<int> counts);
    OccupationVector(std::initializer_list<int> counts);

    /// n_modes x 0 photons.
    static OccupationVector vacuum(int modes);
    /// One photon in each of the first `photons` modes of `modes`.
    static OccupationVector ones(int modes, int photons);

    int modes() const { return static_cast<int>(counts_.size()); }
    int photons() const { return photons_; }
    int operator[](int mode) const { return counts_[mode]; }
    const std::vector<int> &counts() const { return counts_; }

    /// Mode index of every photon, repeated by multiplicity, ascending.
    std::vector<int> photon_modes() const;

    /// "(1,0,2)"
    std::string to_string() const;

    bool operator==(const OccupationVector &other) const = default;
    std::strong_ordering operator<=>(const OccupationVector &other) const = default;

   private:
    std::vector<int> counts_;
    int photons_ = 0;
};

/// All occupation vectors with `m` modes and `n` photons, starting from
/// (n,0,...,0) and ending at (0,...,0,n): descending lexicographic order.
std::vector<OccupationVector> enumerate_outcomes(int m, int n);

/// Number of outcomes, C(n+m-1, n).
long long count_outcomes(int m, int n);

/// Probability table over enumerate_outcomes(m, n), stored in that order.
struct Distribution {
    std::vector<OccupationVector> outcomes;
    std::vector<double> probabilities;

    size_t size() const { return outcomes.size(); }
    /// Zero for outcomes that are not in the table (different m or n).
    double probability(const OccupationVector &s) const;
    double total() const;
    /// max |p - q| over the union of outcomes.
    double max_abs_diff(const Distribution &other) const;
};

/// Zeroed distribution over all (m, n) outcomes.
Distribution empty_distribution(int m, int n);

/// <s| U_Fock |r> = perm(U[s, r]) / sqrt(prod r_i! prod s_j!), where U[s, r]
/// repeats row j of U s_j times and column i r_i times.
///
/// Throws ConservationError if photon numbers differ, DimensionError if the
/// mode counts do not match U.
Complex transition_amplitude(const ComplexMatrix &u, const OccupationVector &r, const OccupationVector &s);

/// Output statistics for fully indistinguishable photons in input r.
/// Throws ValidationError if u is not unitary at kUnitaryTolerance.
Distribution output_distribution(const ComplexMatrix &u, const OccupationVector &r);

/// Same as output_distribution without the unitarity check; `u` may be a
/// sub-block of a unitary.
Distribution output_distribution_unchecked(const ComplexMatrix &u, const OccupationVector &r);

/// sqrt(prod_i counts_i!) computed directly for small totals and in log
/// space above 12 photons.
double sqrt_factorial_product(const OccupationVector &v);

/// Rows of `u` selected by s.photon_modes(), columns by r.photon_modes().
ComplexMatrix repeated_submatrix(const ComplexMatrix &u, const OccupationVector &r, const OccupationVector &s);

}  // namespace photonmesh

#endif

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

#include "photonmesh/interference.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "photonmesh/errors.h"

namespace photonmesh {

namespace {

constexpr double kHermitianTolerance = 1e-12;
constexpr double kTraceTolerance = 1e-12;
constexpr double kEigenFloor = -1e-10;

double factorial_product(const OccupationVector &v) {
    const double root = sqrt_factorial_product(v);
    return root * root;
}

long long encode(const std::vector<int> &counts, int base) {
    long long key = 0;
    for (int c : counts) {
        key = key * base + c;
    }
    return key;
}

}  // namespace

InternalState::InternalState(ComplexMatrix density) : rho_(std::move(density)) {
    validate();
}

InternalState::InternalState(ComplexMatrix density, NoCheck) : rho_(std::move(density)) {
}

InternalState InternalState::unchecked(ComplexMatrix density) {
    return InternalState(std::move(density), NoCheck{});
}

InternalState InternalState::pure(const ComplexVector &psi) {
    const double norm = psi.norm();
    if (norm == 0.0) {
        throw ValidationError("pure state vector has zero norm");
    }
    const ComplexVector v = psi / norm;
    return InternalState(v * v.adjoint());
}

InternalState InternalState::basis(int dim, int level) {
    if (dim < 1 || level < 0 || level >= dim) {
        throw DimensionError("basis level " + std::to_string(level) + " outside dim " + std::to_string(dim));
    }
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(level, level) = 1.0;
    return InternalState(std::move(rho), NoCheck{});
}

InternalState InternalState::embedded(int new_dim) const {
    if (new_dim < dim()) {
        throw DimensionError("cannot embed into a smaller internal space");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(new_dim, new_dim);
    rho.topLeftCorner(dim(), dim()) = rho_;
    return InternalState(std::move(rho), NoCheck{});
}

void InternalState::validate() const {
    if (rho_.rows() != rho_.cols() || rho_.rows() == 0) {
        throw DimensionError("density matrix must be square and non-empty");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance) {
        throw ValidationError("density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - Complex{1.0, 0.0}) > kTraceTolerance) {
        throw ValidationError("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(rho_, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < kEigenFloor) {
        throw ValidationError("density matrix has a negative eigenvalue");
    }
}

Eigen::MatrixXd PhotonEnsemble::gram() const {
    const int n = size();
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
    for (int j = 0; j < n; j++) {
        for (int k = j + 1; k < n; k++) {
            const double v = hom_visibility(photons[j], photons[k]);
            g(j, k) = v;
            g(k, j) = v;
        }
    }
    return g;
}

void PhotonEnsemble::validate() const {
    if (input_modes.photons() != size()) {
        throw DimensionError(
            "ensemble has " + std::to_string(size()) + " photons but its placement holds " +
            std::to_string(input_modes.photons()));
    }
    for (const auto &p : photons) {
        if (p.dim() != internal_dim()) {
            throw DimensionError("photons in an ensemble must share one internal dimension");
        }
        p.validate();
    }
    if (size() > 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram(), Eigen::EigenvaluesOnly);
        if (eig.eigenvalues().minCoeff() < kEigenFloor) {
            throw ValidationError("Gram matrix of the ensemble is not positive semidefinite");
        }
    }
}

InternalState noisy_photon(double epsilon, int noise_level, int dim) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw RangeError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    }
    if (noise_level <= 0 || noise_level >= dim) {
        throw DimensionError("noise level must be in [1, dim)");
    }
    ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
    rho(0, 0) = 1.0 - epsilon;
    rho(noise_level, noise_level) = epsilon;
    return InternalState(std::move(rho));
}

PhotonEnsemble make_noisy_source(int n, double epsilon, std::optional<OccupationVector> placement) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw RangeError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    }
    if (n < 1) {
        throw DimensionError("a noisy source needs at least one photon");
    }
    PhotonEnsemble e;
    e.model = NoiseModel::kCanonical;
    e.epsilon = epsilon;
    e.input_modes = placement ? *placement : OccupationVector::ones(n, n);
    if (e.input_modes.photons() != n) {
        throw DimensionError("placement holds a different number of photons than requested");
    }
    for (int k = 0; k < n; k++) {
        e.photons.push_back(noisy_photon(epsilon, k + 1, n + 1));
    }
    return e;
}

PhotonEnsemble make_explicit_ensemble(std::vector<InternalState> photons, OccupationVector placement) {
    PhotonEnsemble e;
    e.model = NoiseModel::kExplicit;
    e.photons = std::move(photons);
    e.input_modes = std::move(placement);
    if (e.input_modes.photons() != e.size()) {
        throw DimensionError("placement photon count does not match the number of states");
    }
    for (const auto &p : e.photons) {
        if (p.dim() != e.internal_dim()) {
            throw DimensionError("photons in an ensemble must share one internal dimension");
        }
    }
    return e;
}

double hom_visibility(const InternalState &a, const InternalState &b) {
    if (a.dim() != b.dim()) {
        throw DimensionError(
            "internal dimension mismatch: " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
    return (a.density() * b.density()).trace().real();
}

Distribution distinguishable_distribution(const ComplexMatrix &u, const OccupationVector &r) {
    Distribution d = empty_distribution(r.modes(), r.photons());
    for (size_t i = 0; i < d.size(); i++) {
        const ComplexMatrix sub = repeated_submatrix(u, r, d.outcomes[i]);
        const ComplexMatrix weights = sub.cwiseAbs2().cast<Complex>();
        d.probabilities[i] = permanent(weights).real() / factorial_product(d.outcomes[i]);
    }
    return d;
}

double pure_state_outcome_probability(
    const ComplexMatrix &u,
    const std::vector<int> &photon_modes,
    const std::vector<ComplexVector> &states,
    const OccupationVector &s) {
    const int n = static_cast<int>(photon_modes.size());
    if (s.photons() != n) {
        return 0.0;
    }
    const std::vector<int> out_modes = s.photon_modes();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    // P(s) = sum_pi G_pi perm(A_pi) / (N_in prod s!), where
    // G_pi = prod_k <psi_pi(k)|psi_k> and A_pi[i][k] = U[d_i, in_k] conj(U[d_i, in_pi(k)]).
    Complex numerator{0.0, 0.0};
    Complex input_norm{0.0, 0.0};
    ComplexMatrix a(n, n);
    do {
        Complex g{1.0, 0.0};
        bool same_modes = true;
        for (int k = 0; k < n && std::abs(g) > 0.0; k++) {
            g *= states[perm[k]].dot(states[k]);
            same_modes = same_modes && photon_modes[perm[k]] == photon_modes[k];
        }
        if (std::abs(g) == 0.0) {
            continue;
        }
        if (same_modes) {
            input_norm += g;
        }
        for (int i = 0; i < n; i++) {
            for (int k = 0; k < n; k++) {
                a(i, k) = u(out_modes[i], photon_modes[k]) * std::conj(u(out_modes[i], photon_modes[perm[k]]));
            }
        }
        numerator += g * permanent(a);
    } while (std::next_permutation(perm.begin(), perm.end()));

    return numerator.real() / (input_norm.real() * factorial_product(s));
}

std::vector<MixtureBranch> canonical_branches(const PhotonEnsemble &ensemble) {
    if (ensemble.model != NoiseModel::kCanonical) {
        throw ValidationError("canonical branch expansion requires a canonical ensemble");
    }
    const int n = ensemble.size();
    const int m = ensemble.input_modes.modes();
    const double eps = ensemble.epsilon;
    const std::vector<int> modes = ensemble.input_modes.photon_modes();
    std::vector<MixtureBranch> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); mask++) {
        const int bad = std::popcount(mask);
        const double w = std::pow(eps, bad) * std::pow(1.0 - eps, n - bad);
        if (w == 0.0) {
            continue;
        }
        MixtureBranch branch;
        branch.weight = w;
        std::vector<int> good(m, 0);
        bool any_good = false;
        for (int k = 0; k < n; k++) {
            if ((mask >> k) & 1) {
                std::vector<int> single(m, 0);
                single[modes[k]] = 1;
                branch.classes.push_back({OccupationVector(std::move(single)), k + 1});
            } else {
                good[modes[k]]++;
                any_good = true;
            }
        }
        if (any_good) {
            branch.classes.insert(branch.classes.begin(), PhotonClass{OccupationVector(std::move(good)), 0});
        }
        out.push_back(std::move(branch));
    }
    return out;
}

double ClassProbabilityCache::probability(const OccupationVector &input, const OccupationVector &output) {
    auto key = std::make_pair(input, output);
    auto it = single_.find(key);
    if (it != single_.end()) {
        return it->second;
    }
    const double p = std::norm(transition_amplitude(u_, input, output));
    single_.emplace(std::move(key), p);
    return p;
}

const Distribution &ClassProbabilityCache::distribution(const OccupationVector &input) {
    auto it = full_.find(input);
    if (it == full_.end()) {
        it = full_.emplace(input, output_distribution_unchecked(u_, input)).first;
    }
    return it->second;
}

Distribution convolve(const Distribution &a, const Distribution &b) {
    if (a.size() == 0) {
        return b;
    }
    if (b.size() == 0) {
        return a;
    }
    const int m = a.outcomes.front().modes();
    const int n = a.outcomes.front().photons() + b.outcomes.front().photons();
    Distribution out = empty_distribution(m, n);
    std::unordered_map<long long, size_t> index;
    for (size_t i = 0; i < out.size(); i++) {
        index.emplace(encode(out.outcomes[i].counts(), n + 1), i);
    }
    std::vector<int> sum(m);
    for (size_t i = 0; i < a.size(); i++) {
        if (a.probabilities[i] == 0.0) {
            continue;
        }
        for (size_t j = 0; j < b.size(); j++) {
            if (b.probabilities[j] == 0.0) {
                continue;
            }
            for (int k = 0; k < m; k++) {
                sum[k] = a.outcomes[i][k] + b.outcomes[j][k];
            }
            out.probabilities[index.at(encode(sum, n + 1))] += a.probabilities[i] * b.probabilities[j];
        }
    }
    return out;
}

namespace {

void require_unitary_for(const ComplexMatrix &u, const PhotonEnsemble &ensemble) {
    if (!is_unitary(u)) {
        throw ValidationError("interferometer matrix is not unitary");
    }
    if (u.rows() != ensemble.input_modes.modes()) {
        throw DimensionError(
            "interferometer has " + std::to_string(u.rows()) + " modes but the ensemble is placed on " +
            std::to_string(ensemble.input_modes.modes()));
    }
}

Distribution canonical_distribution(const ComplexMatrix &u, const PhotonEnsemble &ensemble) {
    const int m = ensemble.input_modes.modes();
    const int n = ensemble.size();
    ClassProbabilityCache cache(u);
    Distribution total = empty_distribution(m, n);
    for (const auto &branch : canonical_branches(ensemble)) {
        Distribution acc;
        for (const auto &cls : branch.classes) {
            acc = convolve(acc, cache.distribution(cls.input));
        }
        for (size_t i = 0; i < total.size(); i++) {
            total.probabilities[i] += branch.weight * acc.probabilities[i];
        }
    }
    return total;
}

// Enumerates the pure-state branches of each photon's spectral decomposition.
Distribution explicit_distribution(const ComplexMatrix &u, const PhotonEnsemble &ensemble) {
    const int m = ensemble.input_modes.modes();
    const int n = ensemble.size();
    const std::vector<int> modes = ensemble.input_modes.photon_modes();

    std::vector<std::vector<std::pair<double, ComplexVector>>> spectra(n);
    for (int k = 0; k < n; k++) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(ensemble.photons[k].density());
        for (int t = 0; t < eig.eigenvalues().size(); t++) {
            const double lambda = eig.eigenvalues()(t);
            if (lambda > 1e-14) {
                spectra[k].emplace_back(lambda, eig.eigenvectors().col(t));
            }
        }
    }

    Distribution total = empty_distribution(m, n);
    std::vector<size_t> choice(n, 0);
    std::vector<ComplexVector> states(n);
    while (true) {
        double w = 1.0;
        for (int k = 0; k < n; k++) {
            w *= spectra[k][choice[k]].first;
            states[k] = spectra[k][choice[k]].second;
        }
        for (size_t i = 0; i < total.size(); i++) {
            total.probabilities[i] += w * pure_state_outcome_probability(u, modes, states, total.outcomes[i]);
        }
        int k = 0;
        while (k < n && ++choice[k] == spectra[k].size()) {
            choice[k] = 0;
            k++;
        }
        if (k == n) {
            break;
        }
    }
    return total;
}

// Visits every split of `remaining` into per-class outputs, tracking which
// class supplied the photon in `mode`.
void decompose_outcome(
    ClassProbabilityCache &cache,
    const std::vector<PhotonClass> &classes,
    size_t index,
    std::vector<int> &remaining,
    int mode,
    double prob,
    int level,
    std::vector<double> &by_level);

void split_class(
    ClassProbabilityCache &cache,
    const std::vector<PhotonClass> &classes,
    size_t index,
    std::vector<int> &remaining,
    std::vector<int> &part,
    int k,
    int left,
    int mode,
    double prob,
    int level,
    std::vector<double> &by_level) {
    const int m = static_cast<int>(remaining.size());
    if (k == m - 1) {
        if (left > remaining[k]) {
            return;
        }
        part[k] = left;
        const OccupationVector out(part);
        const double p = cache.probability(classes[index].input, out);
        if (p == 0.0) {
            return;
        }
        for (int j = 0; j < m; j++) {
            remaining[j] -= part[j];
        }
        const int next_level = part[mode] > 0 ? classes[index].level : level;
        decompose_outcome(cache, classes, index + 1, remaining, mode, prob * p, next_level, by_level);
        for (int j = 0; j < m; j++) {
            remaining[j] += part[j];
        }
        return;
    }
    for (int c = std::min(left, remaining[k]); c >= 0; c--) {
        part[k] = c;
        split_class(cache, classes, index, remaining, part, k + 1, left - c, mode, prob, level, by_level);
    }
}

void decompose_outcome(
    ClassProbabilityCache &cache,
    const std::vector<PhotonClass> &classes,
    size_t index,
    std::vector<int> &remaining,
    int mode,
    double prob,
    int level,
    std::vector<double> &by_level) {
    if (index == classes.size()) {
        by_level[level] += prob;
        return;
    }
    std::vector<int> part(remaining.size(), 0);
    split_class(
        cache, classes, index, remaining, part, 0, classes[index].input.photons(), mode, prob, level, by_level);
}

}  // namespace

Distribution output_distribution_partial(const ComplexMatrix &u, const PhotonEnsemble &ensemble) {
    ensemble.validate();
    require_unitary_for(u, ensemble);
    if (ensemble.model == NoiseModel::kCanonical) {
        return canonical_distribution(u, ensemble);
    }
    return explicit_distribution(u, ensemble);
}

std::vector<double> level_resolved_probability(
    const ComplexMatrix &u, const PhotonEnsemble &ensemble, const OccupationVector &s, int mode) {
    if (ensemble.model != NoiseModel::kCanonical) {
        throw ValidationError("level-resolved probabilities are defined for canonical ensembles");
    }
    if (mode < 0 || mode >= s.modes() || s[mode] != 1) {
        throw ValidationError("the resolved mode must hold exactly one photon in " + s.to_string());
    }
    if (s.photons() != ensemble.size()) {
        throw ConservationError("outcome photon number differs from the ensemble");
    }
    require_unitary_for(u, ensemble);
    ClassProbabilityCache cache(u);
    std::vector<double> by_level(ensemble.internal_dim(), 0.0);
    std::vector<int> remaining = s.counts();
    for (const auto &branch : canonical_branches(ensemble)) {
        std::vector<double> partial(by_level.size(), 0.0);
        decompose_outcome(cache, branch.classes, 0, remaining, mode, 1.0, 0, partial);
        for (size_t l = 0; l < by_level.size(); l++) {
            by_level[l] += branch.weight * partial[l];
        }
    }
    return by_level;
}

}  // namespace photonmesh

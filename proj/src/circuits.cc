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

#include "photonmesh/circuits.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "photonmesh/errors.h"

namespace photonmesh {

std::string_view kind_name(ElementKind kind) {
    switch (kind) {
        case ElementKind::kBeamSplitter:
            return "bs";
        case ElementKind::kPhaseShifter:
            return "ps";
        case ElementKind::kMzi:
            return "mzi";
    }
    return "?";
}

ElementKind parse_kind(std::string_view name) {
    if (name == "bs") {
        return ElementKind::kBeamSplitter;
    }
    if (name == "ps") {
        return ElementKind::kPhaseShifter;
    }
    if (name == "mzi") {
        return ElementKind::kMzi;
    }
    throw ParseError("unknown element kind '" + std::string(name) + "'");
}

Element Element::beam_splitter(int a, int b, double theta, double phi) {
    return Element{ElementKind::kBeamSplitter, a, b, theta, phi};
}

Element Element::phase_shifter(int mode, double phi) {
    return Element{ElementKind::kPhaseShifter, mode, -1, 0.0, phi};
}

Element Element::mzi(int a, int b, double theta, double phi) {
    return Element{ElementKind::kMzi, a, b, theta, phi};
}

std::vector<int> Element::modes() const {
    if (two_mode()) {
        return {mode_a, mode_b};
    }
    return {mode_a};
}

ComplexMatrix beam_splitter_matrix(double theta) {
    const Complex i{0.0, 1.0};
    ComplexMatrix m(2, 2);
    m << std::cos(theta), i * std::sin(theta), i * std::sin(theta), std::cos(theta);
    return m;
}

ComplexMatrix Element::block() const {
    const Complex phase = std::polar(1.0, phi);
    switch (kind) {
        case ElementKind::kPhaseShifter: {
            ComplexMatrix m(1, 1);
            m(0, 0) = phase;
            return m;
        }
        case ElementKind::kBeamSplitter: {
            ComplexMatrix m = beam_splitter_matrix(theta);
            m.col(0) *= phase;
            return m;
        }
        case ElementKind::kMzi: {
            ComplexMatrix m(2, 2);
            m << phase * std::cos(theta), -std::sin(theta), phase * std::sin(theta), std::cos(theta);
            return m;
        }
    }
    return {};
}

Circuit::Circuit(int mode_count) : mode_count_(mode_count) {
    if (mode_count < 1) {
        throw DimensionError("a circuit needs at least one mode");
    }
}

void Circuit::append(const Element &e) {
    for (int m : e.modes()) {
        if (m < 0 || m >= mode_count_) {
            throw LayoutError("element mode " + std::to_string(m) + " outside the circuit");
        }
    }
    if (e.two_mode() && e.mode_a == e.mode_b) {
        throw LayoutError("two-mode element acts twice on mode " + std::to_string(e.mode_a));
    }
    size_t layer = 0;
    for (size_t l = layers_.size(); l > 0; l--) {
        bool touches = false;
        for (const auto &other : layers_[l - 1]) {
            for (int a : e.modes()) {
                for (int b : other.modes()) {
                    touches = touches || a == b;
                }
            }
        }
        if (touches) {
            layer = l;
            break;
        }
    }
    if (layer == layers_.size()) {
        layers_.emplace_back();
    }
    layers_[layer].push_back(e);
}

void Circuit::append_layer(std::vector<Element> layer) {
    std::vector<bool> used(mode_count_, false);
    for (const auto &e : layer) {
        for (int m : e.modes()) {
            if (m < 0 || m >= mode_count_) {
                throw LayoutError("element mode " + std::to_string(m) + " outside the circuit");
            }
            if (used[m]) {
                throw LayoutError("mode " + std::to_string(m) + " appears twice in one layer");
            }
            used[m] = true;
        }
    }
    layers_.push_back(std::move(layer));
}

std::vector<Element> Circuit::elements() const {
    std::vector<Element> out;
    for (const auto &layer : layers_) {
        out.insert(out.end(), layer.begin(), layer.end());
    }
    return out;
}

void Circuit::validate() const {
    for (size_t l = 0; l < layers_.size(); l++) {
        std::vector<bool> used(mode_count_, false);
        for (const auto &e : layers_[l]) {
            if (e.two_mode() && e.mode_a == e.mode_b) {
                throw LayoutError("two-mode element acts twice on mode " + std::to_string(e.mode_a));
            }
            for (int m : e.modes()) {
                if (m < 0 || m >= mode_count_) {
                    throw LayoutError("element mode " + std::to_string(m) + " outside the circuit");
                }
                if (used[m]) {
                    throw LayoutError(
                        "mode " + std::to_string(m) + " appears twice in layer " + std::to_string(l));
                }
                used[m] = true;
            }
        }
    }
    if (!input_permutation.empty()) {
        std::vector<int> sorted = input_permutation;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i < static_cast<int>(sorted.size()); i++) {
            if (sorted[i] != i || static_cast<int>(sorted.size()) != mode_count_) {
                throw LayoutError("input permutation is not a permutation of the modes");
            }
        }
    }
    for (int m : auxiliary_modes) {
        if (m < 0 || m >= mode_count_) {
            throw LayoutError("auxiliary mode " + std::to_string(m) + " outside the circuit");
        }
    }
}

ComplexMatrix qft_matrix(int m) {
    if (m < 1) {
        throw DimensionError("qft_matrix requires m >= 1");
    }
    ComplexMatrix f(m, m);
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    for (int j = 0; j < m; j++) {
        for (int k = 0; k < m; k++) {
            // Reduce j*k mod m first so large products keep full precision.
            const int e = (j * k) % m;
            f(j, k) = std::polar(scale, 2.0 * std::numbers::pi * e / m);
        }
    }
    return f;
}

ComplexMatrix circuit_to_unitary(const Circuit &c) {
    c.validate();
    ComplexMatrix u = ComplexMatrix::Identity(c.mode_count(), c.mode_count());
    for (const auto &layer : c.layers()) {
        for (const auto &e : layer) {
            const ComplexMatrix b = e.block();
            if (e.two_mode()) {
                const Eigen::RowVectorXcd ra = u.row(e.mode_a);
                const Eigen::RowVectorXcd rb = u.row(e.mode_b);
                u.row(e.mode_a) = b(0, 0) * ra + b(0, 1) * rb;
                u.row(e.mode_b) = b(1, 0) * ra + b(1, 1) * rb;
            } else {
                u.row(e.mode_a) *= b(0, 0);
            }
        }
    }
    return u;
}

ComplexMatrix logical_unitary(const Circuit &c) {
    const ComplexMatrix u = circuit_to_unitary(c);
    if (c.input_permutation.empty()) {
        return u;
    }
    ComplexMatrix out(u.rows(), u.cols());
    for (int i = 0; i < c.mode_count(); i++) {
        out.col(c.input_permutation[i]) = u.col(i);
    }
    return out;
}

ComponentReport component_report(const Circuit &c) {
    ComponentReport r;
    for (const auto &layer : c.layers()) {
        int two = 0;
        for (const auto &e : layer) {
            two += e.two_mode() ? 1 : 0;
        }
        r.pairs += two;
        r.depth_layers += two > 0 ? 1 : 0;
    }
    return r;
}

Circuit concatenate(const Circuit &a, const Circuit &b) {
    if (a.mode_count() != b.mode_count()) {
        throw DimensionError("cannot concatenate circuits with different mode counts");
    }
    Circuit out = a;
    for (const auto &e : b.elements()) {
        out.append(e);
    }
    for (int m : b.auxiliary_modes) {
        if (std::find(out.auxiliary_modes.begin(), out.auxiliary_modes.end(), m) == out.auxiliary_modes.end()) {
            out.auxiliary_modes.push_back(m);
        }
    }
    return out;
}

Circuit embed(const Circuit &c, int mode_count, const std::vector<int> &mode_map) {
    if (static_cast<int>(mode_map.size()) != c.mode_count()) {
        throw DimensionError("mode map length differs from the circuit's mode count");
    }
    Circuit out(mode_count);
    for (auto e : c.elements()) {
        e.mode_a = mode_map.at(e.mode_a);
        if (e.two_mode()) {
            e.mode_b = mode_map.at(e.mode_b);
        }
        out.append(e);
    }
    for (int m : c.auxiliary_modes) {
        out.auxiliary_modes.push_back(mode_map.at(m));
    }
    out.label = c.label;
    out.validate();
    return out;
}

}  // namespace photonmesh

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

#ifndef PHOTONMESH_CIRCUITS_H
#define PHOTONMESH_CIRCUITS_H

#include <string>
#include <string_view>
#include <vector>

#include "photonmesh/numerics.h"

namespace photonmesh {

enum class ElementKind {
    /// BS(theta) * diag(e^{i phi}, 1): a splitter preceded by a phase on the
    /// first listed mode.
    kBeamSplitter,
    /// e^{i phi} on one mode.
    kPhaseShifter,
    /// [[e^{i phi} cos t, -sin t], [e^{i phi} sin t, cos t]]. t = 0 is bar, t = pi/2 cross.
    kMzi,
};

std::string_view kind_name(ElementKind kind);
/// Inverse of kind_name; throws ParseError.
ElementKind parse_kind(std::string_view name);

struct Element {
    ElementKind kind = ElementKind::kBeamSplitter;
    int mode_a = 0;
    /// -1 for phase shifters.
    int mode_b = -1;
    double theta = 0.0;
    double phi = 0.0;

    static Element beam_splitter(int a, int b, double theta, double phi = 0.0);
    static Element phase_shifter(int mode, double phi);
    static Element mzi(int a, int b, double theta, double phi);

    bool two_mode() const { return kind != ElementKind::kPhaseShifter; }
    std::vector<int> modes() const;
    /// 2x2 (or 1x1) block acting on modes() in listed order.
    ComplexMatrix block() const;

    bool operator==(const Element &other) const = default;
};

/// BS(theta) = [[cos t, i sin t], [i sin t, cos t]].
ComplexMatrix beam_splitter_matrix(double theta);

struct ComponentReport {
    /// Two-mode elements; output phase layers are not counted.
    int pairs = 0;
    /// Layers holding at least one two-mode element.
    int depth_layers = 0;
};

class Circuit {
   public:
    Circuit() = default;
    explicit Circuit(int mode_count);

    int mode_count() const { return mode_count_; }
    const std::vector<std::vector<Element>> &layers() const { return layers_; }

    /// Adds an element to the earliest layer after every element that already
    /// touches one of its modes. Throws LayoutError for modes outside the circuit.
    void append(const Element &e);
    /// Adds a whole layer as given. Throws LayoutError on overlapping modes.
    void append_layer(std::vector<Element> layer);
    /// Elements in layer order.
    std::vector<Element> elements() const;

    /// Physical input i carries logical input input_permutation[i]. Empty means identity.
    std::vector<int> input_permutation;
    /// Modes that only exist to model noise or loss.
    std::vector<int> auxiliary_modes;
    std::string label;

    /// Throws LayoutError for overlapping modes in a layer, out-of-range modes,
    /// or a malformed permutation.
    void validate() const;

    bool operator==(const Circuit &other) const = default;

   private:
    int mode_count_ = 0;
    std::vector<std::vector<Element>> layers_;
};

/// (1/sqrt m) e^{2 pi i j k / m}, 0-based j, k.
ComplexMatrix qft_matrix(int m);

/// Product of embedded element blocks in layer order (later elements act last).
ComplexMatrix circuit_to_unitary(const Circuit &c);

/// circuit_to_unitary with columns moved to their logical inputs:
/// L[:, input_permutation[i]] = C[:, i].
ComplexMatrix logical_unitary(const Circuit &c);

ComponentReport component_report(const Circuit &c);

/// Triangular mesh of m(m-1)/2 MZIs plus output phases; depth 2m-3.
/// Throws ValidationError for non-unitary input.
Circuit reck_decompose(const ComplexMatrix &u);

/// Rectangular mesh of m(m-1)/2 MZIs plus output phases; depth m.
/// Throws ValidationError for non-unitary input.
Circuit clements_decompose(const ComplexMatrix &u);

/// Radix-2 decimation-in-time network for QFT_{2^n}: n stages of 2^{n-1}
/// balanced splitters plus one output phase layer. Inputs are bit reversed
/// and the permutation is stored in the circuit. 1 <= n <= 4.
Circuit cooley_tukey_qfft(int n_qubits);

/// Elements of `b` appended after those of `a`; mode counts must match.
Circuit concatenate(const Circuit &a, const Circuit &b);

/// Copies `c` onto a larger circuit, mode i going to mode_map[i].
Circuit embed(const Circuit &c, int mode_count, const std::vector<int> &mode_map);

/// Versioned JSON text. parse_circuit(serialize_circuit(c)) == c bit for bit.
std::string serialize_circuit(const Circuit &c);
/// Throws ParseError on malformed input or an unknown format/version.
Circuit parse_circuit(std::string_view text);

}  // namespace photonmesh

#endif

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

#include <cmath>
#include <numbers>
#include <string>

#include "photonmesh/circuits.h"
#include "photonmesh/errors.h"

namespace photonmesh {

namespace {

constexpr double kPi = std::numbers::pi;

struct Mzi {
    int mode = 0;  // acts on (mode, mode + 1)
    double theta = 0.0;
    double phi = 0.0;
};

void require_unitary(const ComplexMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        throw DimensionError("decomposition requires a non-empty square matrix");
    }
    if (!is_unitary(u)) {
        throw ValidationError("decomposition requires a unitary matrix");
    }
}

// Wraps an angle into (-pi, pi].
double wrap(double a) {
    a = std::remainder(a, 2.0 * kPi);
    return a <= -kPi ? a + 2.0 * kPi : a;
}

// U <- U T^-1 on columns (n, n+1), zeroing U[row, n].
Mzi null_right(ComplexMatrix &u, int row, int n) {
    Mzi t{n, 0.0, 0.0};
    const Complex a = u(row, n);
    const Complex b = u(row, n + 1);
    if (std::abs(b) == 0.0) {
        t.theta = std::abs(a) == 0.0 ? 0.0 : kPi / 2;
    } else {
        const Complex r = a / b;
        t.theta = std::atan(std::abs(r));
        t.phi = std::arg(r);
    }
    const Complex e = std::polar(1.0, -t.phi);
    const double c = std::cos(t.theta);
    const double s = std::sin(t.theta);
    const ComplexVector ca = u.col(n);
    const ComplexVector cb = u.col(n + 1);
    u.col(n) = e * c * ca - s * cb;
    u.col(n + 1) = e * s * ca + c * cb;
    return t;
}

// U <- T U on rows (n-1, n), zeroing U[n, col].
Mzi null_left(ComplexMatrix &u, int n, int col) {
    Mzi t{n - 1, 0.0, 0.0};
    const Complex a = u(n - 1, col);
    const Complex b = u(n, col);
    if (std::abs(a) == 0.0) {
        t.theta = std::abs(b) == 0.0 ? 0.0 : kPi / 2;
    } else {
        const Complex r = -b / a;
        t.theta = std::atan(std::abs(r));
        t.phi = std::arg(r);
    }
    const Complex e = std::polar(1.0, t.phi);
    const double c = std::cos(t.theta);
    const double s = std::sin(t.theta);
    const Eigen::RowVectorXcd ra = u.row(n - 1);
    const Eigen::RowVectorXcd rb = u.row(n);
    u.row(n - 1) = e * c * ra - s * rb;
    u.row(n) = e * s * ra + c * rb;
    return t;
}

void append_output_phases(Circuit &c, const ComplexMatrix &d) {
    std::vector<Element> layer;
    for (int k = 0; k < c.mode_count(); k++) {
        layer.push_back(Element::phase_shifter(k, std::arg(d(k, k))));
    }
    c.append_layer(std::move(layer));
}

}  // namespace

Circuit reck_decompose(const ComplexMatrix &u_in) {
    require_unitary(u_in);
    const int m = static_cast<int>(u_in.rows());
    ComplexMatrix u = u_in;
    Circuit c(m);
    c.label = "reck";
    for (int i = m - 1; i >= 1; i--) {
        for (int j = 0; j < i; j++) {
            const Mzi t = null_right(u, i, j);
            c.append(Element::mzi(t.mode, t.mode + 1, t.theta, t.phi));
        }
    }
    append_output_phases(c, u);
    return c;
}

Circuit clements_decompose(const ComplexMatrix &u_in) {
    require_unitary(u_in);
    const int m = static_cast<int>(u_in.rows());
    ComplexMatrix u = u_in;
    std::vector<Mzi> right;
    std::vector<Mzi> left;
    for (int ii = 0; ii < m - 1; ii++) {
        if (ii % 2 == 0) {
            for (int jj = 0; jj <= ii; jj++) {
                right.push_back(null_right(u, m - 1 - jj, ii - jj));
            }
        } else {
            for (int jj = 0; jj <= ii; jj++) {
                left.push_back(null_left(u, m + jj - ii - 1, jj));
            }
        }
    }

    // u is now diagonal: L_q..L_1 U R_1^-1..R_p^-1 = D. Move D through the
    // inverted left factors so every MZI sits before the output phases.
    std::vector<Complex> d(m);
    for (int k = 0; k < m; k++) {
        d[k] = u(k, k);
    }
    std::vector<Mzi> moved;
    for (auto it = left.rbegin(); it != left.rend(); ++it) {
        const int a = it->mode;
        const double alpha = std::arg(d[a]);
        const double beta = std::arg(d[a + 1]);
        moved.push_back(Mzi{a, it->theta, wrap(alpha - beta + kPi)});
        d[a] = std::polar(1.0, wrap(beta - it->phi + kPi));
        d[a + 1] = std::polar(1.0, beta);
    }

    Circuit c(m);
    c.label = "clements";
    for (const auto &t : right) {
        c.append(Element::mzi(t.mode, t.mode + 1, t.theta, t.phi));
    }
    for (const auto &t : moved) {
        c.append(Element::mzi(t.mode, t.mode + 1, t.theta, t.phi));
    }
    ComplexMatrix dm = ComplexMatrix::Zero(m, m);
    for (int k = 0; k < m; k++) {
        dm(k, k) = d[k];
    }
    append_output_phases(c, dm);
    return c;
}

Circuit cooley_tukey_qfft(int n_qubits) {
    if (n_qubits < 1) {
        throw DimensionError("cooley_tukey_qfft requires at least one qubit");
    }
    if (n_qubits > 4) {
        throw RangeError("cooley_tukey_qfft supports at most 4 qubits");
    }
    const int m = 1 << n_qubits;
    Circuit c(m);
    c.label = "qfft";
    c.input_permutation.resize(m);
    for (int i = 0; i < m; i++) {
        int r = 0;
        for (int b = 0; b < n_qubits; b++) {
            r |= ((i >> b) & 1) << (n_qubits - 1 - b);
        }
        c.input_permutation[i] = r;
    }

    // err[x]: phase by which mode x deviates from the ideal butterfly output.
    std::vector<double> err(m, 0.0);
    for (int h = 1; h < m; h *= 2) {
        std::vector<Element> stage;
        for (int base = 0; base < m; base += 2 * h) {
            for (int t = 0; t < h; t++) {
                const int a = base + t;
                const int b = a + h;
                const Complex w = std::polar(1.0, 2.0 * kPi * t / (2 * h));
                const Complex target = Complex{0.0, -1.0} * w * std::polar(1.0, err[a] - err[b]);
                // Phase sits on the first listed mode, so list b first.
                stage.push_back(Element::beam_splitter(b, a, kPi / 4, std::arg(target)));
                err[b] = wrap(err[a] + kPi / 2);
            }
        }
        c.append_layer(std::move(stage));
    }
    std::vector<Element> fix;
    for (int x = 0; x < m; x++) {
        if (err[x] != 0.0) {
            fix.push_back(Element::phase_shifter(x, -err[x]));
        }
    }
    if (!fix.empty()) {
        c.append_layer(std::move(fix));
    }
    return c;
}

}  // namespace photonmesh

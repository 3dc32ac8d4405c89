// Copyright 2026 The qpath Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "qpath/compiler.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qpath/rng.h"
#include "qpath/vec.h"

namespace qpath {

namespace {

constexpr double kNegligible = 1e-14;

double wrap_phase(double x) {
    x = std::remainder(x, 2 * std::numbers::pi);
    return std::abs(x) <= kNegligible ? 0.0 : x;
}

/// Right-multiplies u by W(R, gamma)^dagger acting on columns (s, t).
void apply_block_inverse(CMatrix &u, Eigen::Index s, Eigen::Index t, double reflectivity, double gamma) {
    const double r = std::sqrt(reflectivity);
    const double tr = std::sqrt(1.0 - reflectivity);
    const Complex undo = std::polar(1.0, -gamma);
    for (Eigen::Index row = 0; row < u.rows(); ++row) {
        const Complex x = u(row, s) * undo;
        const Complex y = u(row, t);
        u(row, s) = -kI * r * x + tr * y;
        u(row, t) = tr * x - kI * r * y;
    }
}

}  // namespace

double unitarity_defect(const CMatrix &u) {
    if (u.rows() != u.cols() || u.rows() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const CMatrix d = u.adjoint() * u - CMatrix::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const CMatrix &u, double tolerance) {
    return unitarity_defect(u) <= tolerance;
}

Circuit reck_decompose(const CMatrix &input) {
    const double defect = unitarity_defect(input);
    if (!(defect <= kUnitarityTolerance)) {
        throw CompileError("matrix is not unitary (max |U^dagger U - 1| = " + std::to_string(defect) + ")");
    }
    const auto n = input.rows();
    CMatrix u = input;
    std::vector<Layer> layers;
    for (Eigen::Index row = n - 1; row >= 1; --row) {
        for (Eigen::Index c = 0; c < row; ++c) {
            const Eigen::Index t = c;
            const Eigen::Index s = c + 1;
            const Complex a = u(row, s);
            const Complex b = u(row, t);
            if (std::abs(b) <= kNegligible) {
                u(row, t) = 0.0;
                continue;
            }
            const double na = std::norm(a);
            const double nb = std::norm(b);
            double reflectivity = na / (na + nb);
            double gamma = 0.0;
            if (std::abs(a) > kNegligible) {
                gamma = wrap_phase(std::arg(a) - std::arg(b) - std::numbers::pi / 2);
            } else {
                reflectivity = 0.0;
            }
            apply_block_inverse(u, s, t, reflectivity, gamma);
            u(row, t) = 0.0;
            if (gamma != 0.0) {
                layers.push_back(Layer{{PhaseShifter{static_cast<PathIndex>(s), gamma}}});
            }
            layers.push_back(
                Layer{{BeamSplitter{static_cast<PathIndex>(s), static_cast<PathIndex>(t), reflectivity}}});
        }
    }
    Layer phases;
    const double reference = std::arg(u(0, 0));
    for (Eigen::Index j = 1; j < n; ++j) {
        const double omega = wrap_phase(std::arg(u(j, j)) - reference);
        if (omega != 0.0) {
            phases.gates.push_back(PhaseShifter{static_cast<PathIndex>(j), omega});
        }
    }
    if (!phases.gates.empty()) {
        layers.push_back(std::move(phases));
    }
    return Circuit(static_cast<std::size_t>(n), std::move(layers), "reck", "compiled unitary");
}

CMatrix reconstruct_unitary(const Circuit &circuit) {
    const auto n = static_cast<Eigen::Index>(circuit.width());
    CMatrix m = CMatrix::Identity(n, n);
    for (const Layer &layer : circuit.layers()) {
        for (const Gate &gate : layer.gates) {
            if (const auto *ps = std::get_if<PhaseShifter>(&gate)) {
                m.row(ps->path) *= std::polar(1.0, ps->omega);
            } else if (const auto *bs = std::get_if<BeamSplitter>(&gate)) {
                for (Eigen::Index col = 0; col < n; ++col) {
                    splitter_mix(bs->reflectivity, m(bs->s, col), m(bs->t, col));
                }
            } else {
                throw CompileError("cannot form a unitary for a circuit with detectors");
            }
        }
    }
    return m;
}

double ray_matrix_distance(const CMatrix &a, const CMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols() || a.size() == 0) {
        return std::numeric_limits<double>::infinity();
    }
    const Complex overlap = (b.adjoint() * a).trace();
    const Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
    return (a - phase * b).cwiseAbs().maxCoeff();
}

CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    if (n == 0) {
        throw std::invalid_argument("unitary dimension must be positive");
    }
    Rng rng(seed);
    std::normal_distribution<double> gauss;
    const auto dim = static_cast<Eigen::Index>(n);
    CMatrix g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            const double re = gauss(rng);
            g(i, j) = Complex(re, gauss(rng));
        }
    }
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; ++j) {
        const Complex d = r(j, j);
        if (std::abs(d) > 0) {
            q.col(j) *= d / std::abs(d);
        }
    }
    return q;
}

}  // namespace qpath

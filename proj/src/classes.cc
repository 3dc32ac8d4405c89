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

#include "qpath/classes.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qpath/quantum.h"

namespace qpath {

ClassLabel::ClassLabel(CVector z) : z_(std::move(z)) {
    const double n = norm(z_);
    if (z_.empty() || n == 0.0) {
        throw std::invalid_argument("class label must be a non-zero vector");
    }
    for (auto &x : z_) {
        x /= n;
    }
}

ClassLabel ClassLabel::basis(std::size_t width, PathIndex j) {
    return ClassLabel(basis_vector(width, j));
}

Strength dominant_strength(const OnticState &state) {
    return max_strength(state.tau);
}

CVector delta_projection(const OnticState &state) {
    const Strength top = dominant_strength(state);
    if (top.is_zero()) {
        throw std::invalid_argument("delta projection undefined: every field strength is zero");
    }
    CVector out(state.width(), 0.0);
    for (PathIndex j = 0; j < state.width(); ++j) {
        if (state.tau[j] == top) {
            out[j] = state.u[j];
        }
    }
    return out;
}

std::optional<ClassLabel> extract_label(const OnticState &state) {
    if (dominant_strength(state).is_zero()) {
        return std::nullopt;
    }
    CVector d = delta_projection(state);
    if (norm(d) <= 1e-12) {
        return std::nullopt;
    }
    return ClassLabel(std::move(d));
}

bool in_class(const OnticState &state, const ClassLabel &z, PathIndex i) {
    if (state.q != i || i >= state.width() || z.width() != state.width()) {
        return false;
    }
    const Strength top = dominant_strength(state);
    if (top.is_zero() || state.tau[i] != top) {
        return false;
    }
    auto label = extract_label(state);
    return label && label->ray_equals(z, kLabelTolerance);
}

ClassLabel predicted_label_update(const ClassLabel &z, const Layer &layer, std::optional<PathIndex> click) {
    const Partition part = validate_layer(layer, z.width());
    if (click) {
        if (std::find(part.detectors.begin(), part.detectors.end(), *click) == part.detectors.end()) {
            throw std::invalid_argument("click on path " + std::to_string(*click + 1) +
                                        " which has no detector in this layer");
        }
        return ClassLabel::basis(z.width(), *click);
    }
    CVector w = z.vector();
    for (const Gate &gate : layer.gates) {
        if (const auto *ps = std::get_if<PhaseShifter>(&gate)) {
            w[ps->path] *= std::polar(1.0, ps->omega);
        } else if (const auto *bs = std::get_if<BeamSplitter>(&gate)) {
            splitter_mix(bs->reflectivity, w[bs->s], w[bs->t]);
        }
    }
    for (PathIndex j : part.detectors) {
        w[j] = 0.0;
    }
    if (norm_squared(w) <= kImpossibleProbability) {
        throw ImpossibleOutcome("silent outcome has zero weight for this label");
    }
    return ClassLabel(std::move(w));
}

double CongruenceReport::max_deviation() const {
    double m = 0;
    for (double d : deviations) {
        m = std::max(m, d);
    }
    return m;
}

CongruenceReport verify_congruence(const std::vector<OnticState> &trajectory, const OutcomeRecord &record,
                                   const Circuit &circuit, const ClassLabel &init_label, double tolerance) {
    CongruenceReport report;
    auto fail = [&](std::size_t boundary, const std::string &why) {
        if (report.pass) {
            report.pass = false;
            report.first_violation = boundary;
            report.message = why;
        }
    };
    if (trajectory.size() != circuit.depth() + 1) {
        report.pass = false;
        report.message = "trajectory has " + std::to_string(trajectory.size()) + " states, expected " +
                         std::to_string(circuit.depth() + 1);
        return report;
    }

    std::optional<ClassLabel> label = init_label;
    for (std::size_t b = 0; b < trajectory.size(); ++b) {
        if (b > 0 && label) {
            const std::size_t k = b - 1;
            const OutcomeEvent *event = record.find(k);
            const bool has_detectors = !circuit.partition(k).detectors.empty();
            if (has_detectors != (event != nullptr)) {
                fail(b, "outcome record does not match detector layout at layer " + std::to_string(k + 1));
                label.reset();
            } else {
                try {
                    label = predicted_label_update(*label, circuit.layer(k), event ? event->click : std::nullopt);
                } catch (const ImpossibleOutcome &) {
                    fail(b, "recorded outcome at layer " + std::to_string(k + 1) + " is impossible for the label");
                    label.reset();
                }
            }
        }
        const OnticState &state = trajectory[b];
        double dev = std::numeric_limits<double>::infinity();
        auto got = extract_label(state);
        if (label && got) {
            dev = ray_distance(got->vector(), label->vector());
        }
        report.deviations.push_back(dev);
        if (!(dev < tolerance)) {
            std::ostringstream os;
            os << "label deviation " << dev << " at boundary " << b;
            fail(b, os.str());
        } else if (!in_class(state, *label, state.q)) {
            fail(b, "state leaves its class at boundary " + std::to_string(b) + " (particle on path " +
                        std::to_string(state.q + 1) + ")");
        } else if (std::norm(label->vector()[state.q]) <= kImpossibleProbability) {
            fail(b, "particle on path " + std::to_string(state.q + 1) + " which has zero weight in its class at boundary " +
                        std::to_string(b));
        }
    }
    return report;
}

std::vector<Strength> strengths_after_layer(const Layer &layer, const std::vector<Strength> &tau) {
    const Partition part = validate_layer(layer, tau.size());
    std::vector<Strength> out(tau.size());
    for (PathIndex p : part.free) {
        out[p] = tau[p].halved();
    }
    for (PathIndex p : part.phases) {
        out[p] = tau[p].halved();
    }
    for (PathIndex p : part.detectors) {
        out[p] = Strength::zero();
    }
    for (auto [s, t] : part.splitters) {
        out[s] = out[t] = std::max(tau[s], tau[t]).halved();
    }
    return out;
}

bool delta_commutation_applies(const Layer &layer, const std::vector<Strength> &tau) {
    const Partition part = validate_layer(layer, tau.size());
    const Strength top = max_strength(tau);
    if (top.is_zero()) {
        return false;
    }
    for (PathIndex p = 0; p < tau.size(); ++p) {
        if (tau[p] == top && std::find(part.detectors.begin(), part.detectors.end(), p) == part.detectors.end()) {
            return true;
        }
    }
    return false;
}

DeltaCommutationSides delta_commutation_sides(const Layer &layer, const std::vector<Strength> &tau,
                                              std::size_t width) {
    if (tau.size() != width) {
        throw std::invalid_argument("strength vector length does not match width");
    }
    const Partition part = validate_layer(layer, width);
    using Eigen::MatrixXcd;
    using Eigen::VectorXcd;

    MatrixXcd gates = MatrixXcd::Identity(width, width);
    VectorXcd pair_suppression = VectorXcd::Ones(width);
    for (const Gate &gate : layer.gates) {
        if (const auto *ps = std::get_if<PhaseShifter>(&gate)) {
            MatrixXcd s = MatrixXcd::Identity(width, width);
            s(ps->path, ps->path) = std::polar(1.0, ps->omega);
            gates = s * gates;
        } else if (const auto *bs = std::get_if<BeamSplitter>(&gate)) {
            MatrixXcd b = MatrixXcd::Identity(width, width);
            const double r = std::sqrt(bs->reflectivity);
            const double t = std::sqrt(1.0 - bs->reflectivity);
            b(bs->s, bs->s) = kI * r;
            b(bs->s, bs->t) = t;
            b(bs->t, bs->s) = t;
            b(bs->t, bs->t) = kI * r;
            gates = b * gates;
            const Strength local = std::max(tau[bs->s], tau[bs->t]);
            pair_suppression(bs->s) = tau[bs->s] == local ? 1.0 : 0.0;
            pair_suppression(bs->t) = tau[bs->t] == local ? 1.0 : 0.0;
        }
    }

    const Strength top = max_strength(tau);
    const std::vector<Strength> after = strengths_after_layer(layer, tau);
    const Strength top_after = max_strength(after);
    VectorXcd delta_before(width), delta_after(width), silence = VectorXcd::Ones(width);
    for (PathIndex p = 0; p < width; ++p) {
        delta_before(p) = tau[p] == top ? 1.0 : 0.0;
        delta_after(p) = after[p] == top_after ? 1.0 : 0.0;
    }
    for (PathIndex p : part.detectors) {
        silence(p) = 0.0;
    }

    DeltaCommutationSides sides;
    sides.lhs = delta_after.asDiagonal() * gates * pair_suppression.asDiagonal();
    sides.rhs = silence.asDiagonal() * gates * delta_before.asDiagonal();
    return sides;
}

bool check_delta_commutation(const Layer &layer, const std::vector<Strength> &tau, std::size_t width,
                             double tolerance) {
    const auto sides = delta_commutation_sides(layer, tau, width);
    return (sides.lhs - sides.rhs).cwiseAbs().maxCoeff() <= tolerance;
}

}  // namespace qpath

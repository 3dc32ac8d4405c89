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

#include "qpath/quantum.h"

#include <cmath>
#include <string>
#include <utility>

namespace qpath {

namespace {

void check_path(const QuantumState &state, PathIndex j) {
    if (j >= state.width()) {
        throw std::out_of_range("path " + std::to_string(j + 1) + " out of range for " +
                                std::to_string(state.width()) + " paths");
    }
}

}  // namespace

QuantumState::QuantumState(CVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.empty()) {
        throw std::invalid_argument("quantum state needs at least one path");
    }
    if (std::abs(norm_squared(amps_) - 1.0) > 1e-9) {
        throw std::invalid_argument("quantum state is not normalized");
    }
}

QuantumState QuantumState::basis(std::size_t width, PathIndex j) {
    return QuantumState(basis_vector(width, j));
}

bool QuantumState::ray_equals(const QuantumState &other, double tolerance) const {
    return ray_equal(amps_, other.amps_, tolerance);
}

void QuantumState::settle_norm() {
    const double n2 = norm_squared(amps_);
    const double drift = std::abs(n2 - 1.0);
    if (drift > 1e-6) {
        throw std::logic_error("quantum state norm drifted by " + std::to_string(drift));
    }
    if (drift > 1e-9) {
        const double scale = 1.0 / std::sqrt(n2);
        for (auto &a : amps_) {
            a *= scale;
        }
    }
}

QuantumState apply_phase(QuantumState state, PathIndex path, double omega) {
    check_path(state, path);
    state.mutable_amplitudes()[path] *= std::polar(1.0, omega);
    return state;
}

QuantumState apply_beamsplitter(QuantumState state, PathIndex s, PathIndex t, double reflectivity) {
    check_path(state, s);
    check_path(state, t);
    if (s == t) {
        throw std::invalid_argument("beam splitter requires two distinct paths");
    }
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw std::invalid_argument("reflectivity must lie in [0,1]");
    }
    auto &a = state.mutable_amplitudes();
    splitter_mix(reflectivity, a[s], a[t]);
    return state;
}

double detector_click_probability(const QuantumState &state, PathIndex path) {
    check_path(state, path);
    return std::norm(state[path]);
}

QuantumState apply_detection(QuantumState state, PathIndex path, Detection result) {
    check_path(state, path);
    return collapse_layer(std::move(state), {path},
                          result == Detection::kClick ? std::optional<PathIndex>(path) : std::nullopt);
}

void apply_layer_unitaries(QuantumState &state, const Circuit &circuit, std::size_t k) {
    auto &a = state.mutable_amplitudes();
    for (const Gate &gate : circuit.layer(k).gates) {
        if (const auto *ps = std::get_if<PhaseShifter>(&gate)) {
            a[ps->path] *= std::polar(1.0, ps->omega);
        } else if (const auto *bs = std::get_if<BeamSplitter>(&gate)) {
            splitter_mix(bs->reflectivity, a[bs->s], a[bs->t]);
        }
    }
}

QuantumState collapse_layer(QuantumState state, const std::vector<PathIndex> &detectors,
                            std::optional<PathIndex> click) {
    auto &a = state.mutable_amplitudes();
    if (click) {
        check_path(state, *click);
        if (std::norm(a[*click]) <= kImpossibleProbability) {
            throw ImpossibleOutcome("click on path " + std::to_string(*click + 1) + " has zero probability");
        }
        return QuantumState::basis(state.width(), *click);
    }
    for (PathIndex j : detectors) {
        check_path(state, j);
        a[j] = 0.0;
    }
    const double remaining = norm_squared(a);
    if (remaining <= kImpossibleProbability) {
        throw ImpossibleOutcome("joint no-click has zero probability");
    }
    const double scale = 1.0 / std::sqrt(remaining);
    for (auto &x : a) {
        x *= scale;
    }
    return state;
}

QuantumShot run_quantum_shot(const Circuit &circuit, const QuantumState &init, Rng &rng) {
    if (init.width() != circuit.width()) {
        throw std::invalid_argument("initial state width does not match circuit");
    }
    QuantumShot shot{{}, init};
    for (std::size_t k = 0; k < circuit.depth(); ++k) {
        apply_layer_unitaries(shot.final_state, circuit, k);
        const auto &detectors = circuit.partition(k).detectors;
        if (!detectors.empty()) {
            const double u = rng.uniform();
            double acc = 0;
            std::optional<PathIndex> click;
            for (PathIndex j : detectors) {
                acc += std::norm(shot.final_state[j]);
                if (u < acc) {
                    click = j;
                    break;
                }
            }
            shot.final_state = collapse_layer(std::move(shot.final_state), detectors, click);
            shot.record.events.push_back({k, click});
        }
        shot.final_state.settle_norm();
    }
    return shot;
}

namespace {

struct Enumerator {
    const Circuit &circuit;
    std::size_t cap;
    OutcomeDistribution out;
    std::size_t leaves = 0;

    void descend(QuantumState state, std::size_t k, OutcomeRecord &record, double weight) {
        for (; k < circuit.depth(); ++k) {
            apply_layer_unitaries(state, circuit, k);
            state.settle_norm();
            const auto &detectors = circuit.partition(k).detectors;
            if (detectors.empty()) {
                continue;
            }
            double silent = 1.0;
            for (PathIndex j : detectors) {
                const double p = std::norm(state[j]);
                silent -= p;
                if (p > kImpossibleProbability) {
                    record.events.push_back(OutcomeEvent::clicked(k, j));
                    descend(QuantumState::basis(state.width(), j), k + 1, record, weight * p);
                    record.events.pop_back();
                }
            }
            if (silent <= kImpossibleProbability) {
                return;
            }
            state = collapse_layer(std::move(state), detectors, std::nullopt);
            record.events.push_back(OutcomeEvent::silent(k));
            descend(std::move(state), k + 1, record, weight * silent);
            record.events.pop_back();
            return;
        }
        if (++leaves > cap) {
            throw BranchCapExceeded("outcome tree exceeds " + std::to_string(cap) +
                                    " branches; use ontic-only mode");
        }
        out[record] += weight;
    }
};

}  // namespace

OutcomeDistribution exact_outcome_distribution(const Circuit &circuit, const QuantumState &init,
                                               std::size_t branch_cap) {
    if (init.width() != circuit.width()) {
        throw std::invalid_argument("initial state width does not match circuit");
    }
    Enumerator e{circuit, branch_cap, {}, 0};
    OutcomeRecord record;
    e.descend(init, 0, record, 1.0);
    return e.out;
}

}  // namespace qpath

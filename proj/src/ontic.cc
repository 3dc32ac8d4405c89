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

#include "qpath/ontic.h"

#include <algorithm>
#include <cstring>
#include <initializer_list>
#include <string>

namespace qpath {

namespace {

void check_path(const OnticState &state, PathIndex j) {
    if (j >= state.width()) {
        throw std::out_of_range("path " + std::to_string(j + 1) + " out of range for " +
                                std::to_string(state.width()) + " paths");
    }
}

bool bit_identical(const Complex &a, const Complex &b) {
    return std::memcmp(&a, &b, sizeof(Complex)) == 0;
}

/// Runs `apply` and then verifies that nothing outside `own` moved.
template <typename Apply>
void with_locality_check(OnticState &state, std::initializer_list<PathIndex> own, bool may_relocate,
                         OnticDiagnostics *diagnostics, Apply &&apply) {
    thread_local OnticState before;
    before = state;
    apply();
    auto is_own = [&](PathIndex p) { return std::find(own.begin(), own.end(), p) != own.end(); };
    for (PathIndex p = 0; p < state.width(); ++p) {
        if (is_own(p)) {
            continue;
        }
        if (!bit_identical(before.u[p], state.u[p]) || before.tau[p] != state.tau[p]) {
            throw InvariantViolation("gate on paths touched field of foreign path " + std::to_string(p + 1));
        }
    }
    if (state.q != before.q) {
        if (!may_relocate || !is_own(before.q) || !is_own(state.q)) {
            throw InvariantViolation("particle moved outside a beam splitter");
        }
    }
    for (PathIndex p : own) {
        if (state.tau[p] > Strength::one()) {
            throw InvariantViolation("strength above 1 on path " + std::to_string(p + 1));
        }
    }
    if (diagnostics != nullptr) {
        ++diagnostics->checked_gates;
    }
}

void splitter_rule(OnticState &state, PathIndex s, PathIndex t, double reflectivity, Rng &rng,
                   const OnticOptions &options, OnticDiagnostics *diagnostics) {
    const Strength top = std::max(state.tau[s], state.tau[t]);
    const bool suppress = options.fault != OnticFault::kNoSuppression;
    Complex a = (!suppress || state.tau[s] == top) ? state.u[s] : Complex(0.0);
    Complex b = (!suppress || state.tau[t] == top) ? state.u[t] : Complex(0.0);
    const double in_norm = std::norm(a) + std::norm(b);
    splitter_mix(reflectivity, a, b);
    if (options.check_invariants) {
        const double out_norm = std::norm(a) + std::norm(b);
        if (out_norm > in_norm * (1.0 + 1e-12) + 1e-300) {
            throw InvariantViolation("beam splitter increased field norm");
        }
    }
    state.u[s] = a;
    state.u[t] = b;
    state.tau[s] = state.tau[t] = top.halved();

    if (state.q != s && state.q != t) {
        return;
    }
    const double ws = std::norm(a);
    const double wt = std::norm(b);
    double p_s;
    if (ws + wt == 0.0) {
        p_s = 0.5;
        if (diagnostics != nullptr) {
            ++diagnostics->degenerate_relocations;
        }
    } else {
        p_s = (options.fault == OnticFault::kSwappedRelocation ? wt : ws) / (ws + wt);
    }
    state.q = rng.uniform() < p_s ? s : t;
}

}  // namespace

void validate_ontic_state(const OnticState &state) {
    if (state.u.empty() || state.u.size() != state.tau.size()) {
        throw std::invalid_argument("ontic state needs matching, non-empty amplitude and strength vectors");
    }
    if (state.q >= state.u.size()) {
        throw std::out_of_range("particle position out of range");
    }
}

void gate_free(OnticState &state, PathIndex j) {
    check_path(state, j);
    state.tau[j] = state.tau[j].halved();
}

void gate_phase(OnticState &state, PathIndex j, double omega) {
    check_path(state, j);
    state.u[j] *= std::polar(1.0, omega);
    state.tau[j] = state.tau[j].halved();
}

Detection gate_detector(OnticState &state, PathIndex j) {
    check_path(state, j);
    if (state.q == j) {
        state.u[j] = 1.0;
        state.tau[j] = Strength::one();
        return Detection::kClick;
    }
    state.tau[j] = Strength::zero();
    return Detection::kNoClick;
}

void gate_beamsplitter(OnticState &state, PathIndex s, PathIndex t, double reflectivity, Rng &rng,
                       const OnticOptions &options, OnticDiagnostics *diagnostics) {
    check_path(state, s);
    check_path(state, t);
    if (s == t) {
        throw std::invalid_argument("beam splitter requires two distinct paths");
    }
    if (!(reflectivity >= 0.0 && reflectivity <= 1.0)) {
        throw std::invalid_argument("reflectivity must lie in [0,1]");
    }
    splitter_rule(state, s, t, reflectivity, rng, options, diagnostics);
}

std::optional<PathIndex> LayerStep::click() const {
    for (const auto &d : detections) {
        if (d.result == Detection::kClick) {
            return d.path;
        }
    }
    return std::nullopt;
}

LayerStep step_layer(OnticState &state, const Circuit &circuit, std::size_t k, Rng &rng,
                     const OnticOptions &options, OnticDiagnostics *diagnostics) {
    LayerStep step;
    const bool checked = options.check_invariants;
    // Gates sit on disjoint paths and each reads only its own paths, so applying
    // them one after another in place equals the simultaneous update.
    for (const Gate &gate : circuit.layer(k).gates) {
        if (const auto *ps = std::get_if<PhaseShifter>(&gate)) {
            if (checked) {
                with_locality_check(state, {ps->path}, false, diagnostics,
                                    [&] { gate_phase(state, ps->path, ps->omega); });
            } else {
                gate_phase(state, ps->path, ps->omega);
            }
        } else if (const auto *bs = std::get_if<BeamSplitter>(&gate)) {
            if (checked) {
                with_locality_check(state, {bs->s, bs->t}, true, diagnostics, [&] {
                    splitter_rule(state, bs->s, bs->t, bs->reflectivity, rng, options, diagnostics);
                });
            } else {
                splitter_rule(state, bs->s, bs->t, bs->reflectivity, rng, options, diagnostics);
            }
        } else {
            const auto &d = std::get<Detector>(gate);
            Detection r = Detection::kNoClick;
            if (checked) {
                with_locality_check(state, {d.path}, false, diagnostics,
                                    [&] { r = gate_detector(state, d.path); });
            } else {
                r = gate_detector(state, d.path);
            }
            step.detections.push_back({d.path, r});
        }
    }
    for (PathIndex p : circuit.partition(k).free) {
        if (checked) {
            with_locality_check(state, {p}, false, diagnostics, [&] { gate_free(state, p); });
        } else {
            gate_free(state, p);
        }
    }
    if (checked) {
        std::size_t clicks = std::count_if(step.detections.begin(), step.detections.end(),
                                           [](const DetectorResult &d) { return d.result == Detection::kClick; });
        if (clicks > 1) {
            throw InvariantViolation("more than one click in a layer");
        }
    }
    return step;
}

OnticShot run_ontic_shot(const Circuit &circuit, OnticState init, Rng &rng, const OnticOptions &options,
                         bool trace) {
    validate_ontic_state(init);
    if (init.width() != circuit.width()) {
        throw std::invalid_argument("ontic state width does not match circuit");
    }
    OnticShot shot;
    shot.final_state = std::move(init);
    if (trace) {
        shot.trajectory.reserve(circuit.depth() + 1);
        shot.trajectory.push_back(shot.final_state);
    }
    for (std::size_t k = 0; k < circuit.depth(); ++k) {
        LayerStep step = step_layer(shot.final_state, circuit, k, rng, options, &shot.diagnostics);
        if (!step.detections.empty()) {
            shot.record.events.push_back({k, step.click()});
        }
        if (trace) {
            shot.trajectory.push_back(shot.final_state);
        }
    }
    return shot;
}

}  // namespace qpath

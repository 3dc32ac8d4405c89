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

#ifndef QPATH_ONTIC_H_
#define QPATH_ONTIC_H_

// Local hidden-variable engine. The complete state of a run is one particle
// position plus, on every path, a complex field amplitude and a dyadic field
// strength. Every gate touches only the paths it sits on; the only randomness
// is the particle's choice of exit port at a beam splitter.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qpath/circuit.h"
#include "qpath/dyadic.h"
#include "qpath/outcome.h"
#include "qpath/quantum.h"
#include "qpath/rng.h"
#include "qpath/vec.h"

namespace qpath {

struct OnticState {
    PathIndex q = 0;
    CVector u;
    std::vector<Strength> tau;

    std::size_t width() const {
        return u.size();
    }
    bool operator==(const OnticState &) const = default;
};

/// A hard assertion of the engine fired (locality, strength closure, splitter norm).
class InvariantViolation : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Deliberately broken rules, used only as negative controls for the harness.
enum class OnticFault {
    kNone,
    kNoSuppression,       // splitter ignores the strength comparison
    kSwappedRelocation,   // particle exits with the other port's weight
};

struct OnticOptions {
    OnticFault fault = OnticFault::kNone;
    /// Re-check locality and the other hard invariants around every gate.
    bool check_invariants = false;
};

struct OnticDiagnostics {
    /// Relocations with both output amplitudes zero (sampled 50/50).
    std::uint64_t degenerate_relocations = 0;
    /// Number of gate applications verified under check_invariants.
    std::uint64_t checked_gates = 0;

    OnticDiagnostics &operator+=(const OnticDiagnostics &o) {
        degenerate_relocations += o.degenerate_relocations;
        checked_gates += o.checked_gates;
        return *this;
    }
};

void gate_free(OnticState &state, PathIndex j);
void gate_phase(OnticState &state, PathIndex j, double omega);
/// Deterministic: clicks iff the particle is on path j.
Detection gate_detector(OnticState &state, PathIndex j);
void gate_beamsplitter(OnticState &state, PathIndex s, PathIndex t, double reflectivity, Rng &rng,
                       const OnticOptions &options = {}, OnticDiagnostics *diagnostics = nullptr);

struct DetectorResult {
    PathIndex path;
    Detection result;
};

struct LayerStep {
    std::vector<DetectorResult> detections;
    /// Collapsed to a single event: the clicked path, or nullopt for silence.
    std::optional<PathIndex> click() const;
};

/// Applies every gate of layer `k` simultaneously; untouched paths age freely.
LayerStep step_layer(OnticState &state, const Circuit &circuit, std::size_t k, Rng &rng,
                     const OnticOptions &options = {}, OnticDiagnostics *diagnostics = nullptr);

struct OnticShot {
    OutcomeRecord record;
    /// State before the first layer and after every layer; empty unless traced.
    std::vector<OnticState> trajectory;
    OnticState final_state;
    OnticDiagnostics diagnostics;
};

OnticShot run_ontic_shot(const Circuit &circuit, OnticState init, Rng &rng, const OnticOptions &options = {},
                         bool trace = false);

/// Basic shape checks: q in range, matching lengths.
void validate_ontic_state(const OnticState &state);

}  // namespace qpath

#endif  // QPATH_ONTIC_H_

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

#ifndef QPATH_QUANTUM_H_
#define QPATH_QUANTUM_H_

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "qpath/circuit.h"
#include "qpath/outcome.h"
#include "qpath/rng.h"
#include "qpath/vec.h"

namespace qpath {

/// Reference single-particle state: a unit ray in C^N.
class QuantumState {
   public:
    /// Throws std::invalid_argument unless the norm is 1 within 1e-9.
    explicit QuantumState(CVector amplitudes);
    static QuantumState basis(std::size_t width, PathIndex j);

    std::size_t width() const {
        return amps_.size();
    }
    const CVector &amplitudes() const {
        return amps_;
    }
    Complex operator[](PathIndex j) const {
        return amps_[j];
    }

    /// Equality of rays: |<a|b>| >= 1 - tolerance.
    bool ray_equals(const QuantumState &other, double tolerance = 1e-9) const;

    // Low-level in-place mutation used by the gate functions below.
    CVector &mutable_amplitudes() {
        return amps_;
    }
    /// Drift above 1e-9 is renormalized away; above 1e-6 it is an internal error.
    void settle_norm();

   private:
    CVector amps_;
};

enum class Detection { kClick, kNoClick };

/// Outcome whose Born probability is zero (within 1e-12) was requested.
class ImpossibleOutcome : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive enumeration would exceed the configured branch cap.
class BranchCapExceeded : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kImpossibleProbability = 1e-12;
inline constexpr std::size_t kDefaultBranchCap = 1'000'000;

QuantumState apply_phase(QuantumState state, PathIndex path, double omega);
QuantumState apply_beamsplitter(QuantumState state, PathIndex s, PathIndex t, double reflectivity);
double detector_click_probability(const QuantumState &state, PathIndex path);
/// Von Neumann-Lueders update for a single detector.
QuantumState apply_detection(QuantumState state, PathIndex path, Detection result);

/// Applies the phase shifters and beam splitters of layer `k`.
void apply_layer_unitaries(QuantumState &state, const Circuit &circuit, std::size_t k);

/// Collapse for one detector layer treated as a single measurement: a click on
/// `click`, or joint silence of all detectors in `detectors`.
QuantumState collapse_layer(QuantumState state, const std::vector<PathIndex> &detectors,
                            std::optional<PathIndex> click);

struct QuantumShot {
    OutcomeRecord record;
    QuantumState final_state;
};

QuantumShot run_quantum_shot(const Circuit &circuit, const QuantumState &init, Rng &rng);

/// Every outcome record with its Born probability. Branches whose conditional
/// probability is at most kImpossibleProbability are dropped.
OutcomeDistribution exact_outcome_distribution(const Circuit &circuit, const QuantumState &init,
                                               std::size_t branch_cap = kDefaultBranchCap);

}  // namespace qpath

#endif  // QPATH_QUANTUM_H_

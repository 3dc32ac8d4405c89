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

#ifndef QPATH_CLASSES_H_
#define QPATH_CLASSES_H_

// Class structure of ontic states.
//
// An ontic state (q, u, tau) belongs to the class labelled by the unit ray z
// at path i when
//   (a) the particle sits on path i,
//   (b) path i carries the strongest (non-zero) field,
//   (c) the amplitudes on the strongest paths, with every other entry zeroed,
//       are proportional to z.
// Ensembles whose members all satisfy this for a fixed z, with weight |z_i|^2
// on path i, evolve as a whole: each layer maps label z to the same z' that
// the quantum rules produce for state z. This module computes labels, checks
// membership, predicts label updates and verifies whole trajectories.

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qpath/circuit.h"
#include "qpath/dyadic.h"
#include "qpath/ontic.h"
#include "qpath/outcome.h"
#include "qpath/vec.h"

namespace qpath {

/// Unit ray in C^N, compared up to global phase.
class ClassLabel {
   public:
    /// Normalizes `z`; throws std::invalid_argument for a zero vector.
    explicit ClassLabel(CVector z);
    static ClassLabel basis(std::size_t width, PathIndex j);

    const CVector &vector() const {
        return z_;
    }
    std::size_t width() const {
        return z_.size();
    }
    bool ray_equals(const ClassLabel &other, double tolerance = 1e-9) const {
        return ray_equal(z_, other.z_, tolerance);
    }

   private:
    CVector z_;
};

inline constexpr double kLabelTolerance = 1e-9;

Strength dominant_strength(const OnticState &state);

/// Amplitudes on the paths that carry the dominant strength; zero elsewhere.
/// Throws std::invalid_argument if every strength is zero.
CVector delta_projection(const OnticState &state);

/// Normalized delta projection, or nullopt if it vanishes (norm <= 1e-12) or
/// all strengths are zero.
std::optional<ClassLabel> extract_label(const OnticState &state);

/// Membership of the state in the class of `z` at path `i`.
bool in_class(const OnticState &state, const ClassLabel &z, PathIndex i);

/// Label after one layer. `click` is the clicked path or nullopt for silence
/// (also used for layers without detectors). Throws ImpossibleOutcome when the
/// silent branch has zero weight, std::invalid_argument when `click` is not a
/// detector path of the layer.
ClassLabel predicted_label_update(const ClassLabel &z, const Layer &layer, std::optional<PathIndex> click);

struct CongruenceReport {
    std::uint64_t shot = 0;
    /// Ray distance between extracted and predicted label at every layer
    /// boundary, starting with the initial state. Infinity if no label exists.
    std::vector<double> deviations;
    bool pass = true;
    std::optional<std::size_t> first_violation;  // boundary index
    std::string message;

    double max_deviation() const;
};

/// Tracks the label through the recorded outcomes and checks that every state
/// on the trajectory carries it and is in its class at the particle's path,
/// with the particle on a path of non-zero class weight.
CongruenceReport verify_congruence(const std::vector<OnticState> &trajectory, const OutcomeRecord &record,
                                   const Circuit &circuit, const ClassLabel &init_label,
                                   double tolerance = kLabelTolerance);

struct DeltaCommutationSides {
    Eigen::MatrixXcd lhs;  // Delta_{tau'} * (phases * splitters * per-splitter suppression)
    Eigen::MatrixXcd rhs;  // (no-click projectors * phases * splitters) * Delta_tau
};

/// Strengths after the layer, for a particle that does not hit a detector.
std::vector<Strength> strengths_after_layer(const Layer &layer, const std::vector<Strength> &tau);

/// The identity needs some non-detector path to carry the dominant strength
/// (the particle's own path, for in-class states).
bool delta_commutation_applies(const Layer &layer, const std::vector<Strength> &tau);

DeltaCommutationSides delta_commutation_sides(const Layer &layer, const std::vector<Strength> &tau,
                                              std::size_t width);

/// Both sides agree entrywise within `tolerance`.
bool check_delta_commutation(const Layer &layer, const std::vector<Strength> &tau, std::size_t width,
                             double tolerance = 1e-12);

}  // namespace qpath

#endif  // QPATH_CLASSES_H_

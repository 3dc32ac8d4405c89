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


#ifndef QPATH_SCENARIOS_H_
#define QPATH_SCENARIOS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpath/circuit.h"
#include "qpath/outcome.h"

namespace qpath {

/// Two 50/50 splitters around a phase omega on path 1, then detectors on both
/// paths. Starting on path 1, D1 clicks with probability sin^2(omega/2).
Circuit mach_zehnder(double omega);

/// Interaction-free measurement: a detector (the bomb) on path 2 between the
/// two splitters of a balanced interferometer.
Circuit elitzur_vaidman();

/// `steps` rounds of a weak splitter (reflectivity R) followed by a detector
/// on path 2, then a final splitter and detectors on both paths.
Circuit zeno_chain(int steps = 5, double reflectivity = 0.9);

/// Random layers of splitters, phases, free paths and occasional mid-circuit
/// detectors, closed by a full detector layer.
Circuit random_circuit(std::size_t width, std::size_t depth, std::uint64_t seed);

/// Six-path mesh of parallel splitters with a mid-circuit detector.
Circuit mesh6(std::uint64_t seed = 6);

struct Scenario {
    std::string file;  // file name under the scenario directory
    Circuit circuit;
    PathIndex input = 0;
    std::optional<OutcomeRecord> postselect;
};

/// The shipped scenario library, in a fixed order.
std::vector<Scenario> builtin_scenarios();

}  // namespace qpath

#endif  // QPATH_SCENARIOS_H_

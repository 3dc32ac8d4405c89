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


#include "qpath/scenarios.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "qpath/rng.h"

namespace qpath {

namespace {

Layer full_detection(std::size_t width) {
    Layer l;
    for (PathIndex j = 0; j < width; ++j) {
        l.gates.push_back(Detector{j});
    }
    return l;
}

/// Reflectivity kept away from 0 and 1 so that every splitter mixes.
double random_reflectivity(Rng &rng) {
    return 0.05 + 0.9 * rng.uniform();
}

double random_phase(Rng &rng) {
    return 2 * std::numbers::pi * rng.uniform() - std::numbers::pi;
}

}  // namespace

Circuit mach_zehnder(double omega) {
    std::vector<Layer> layers = {
        Layer{{BeamSplitter{0, 1, 0.5}}},
        Layer{{PhaseShifter{0, omega}}},
        Layer{{BeamSplitter{0, 1, 0.5}}},
        full_detection(2),
    };
    return Circuit(2, std::move(layers), "mach-zehnder", "balanced interferometer with a phase on path 1");
}

Circuit elitzur_vaidman() {
    std::vector<Layer> layers = {
        Layer{{BeamSplitter{0, 1, 0.5}}},
        Layer{{Detector{1}}},
        Layer{{BeamSplitter{0, 1, 0.5}}},
        full_detection(2),
    };
    return Circuit(2, std::move(layers), "elitzur-vaidman", "bomb detector on path 2 inside an interferometer");
}

Circuit zeno_chain(int steps, double reflectivity) {
    std::vector<Layer> layers;
    for (int i = 0; i < steps; ++i) {
        layers.push_back(Layer{{BeamSplitter{0, 1, reflectivity}}});
        layers.push_back(Layer{{Detector{1}}});
    }
    layers.push_back(Layer{{BeamSplitter{0, 1, 0.5}}});
    layers.push_back(full_detection(2));
    return Circuit(2, std::move(layers), "zeno-chain", "weak splitters each followed by a detector on path 2");
}

Circuit random_circuit(std::size_t width, std::size_t depth, std::uint64_t seed) {
    if (width == 0 || depth == 0) {
        throw std::invalid_argument("random circuit needs at least one path and one layer");
    }
    Rng rng(seed);
    std::vector<Layer> layers;
    std::vector<PathIndex> order(width);
    for (std::size_t k = 0; k + 1 < depth; ++k) {
        std::iota(order.begin(), order.end(), PathIndex{0});
        std::shuffle(order.begin(), order.end(), rng);
        Layer layer;
        std::size_t i = 0;
        while (i < width) {
            const double roll = rng.uniform();
            if (i + 1 < width && roll < 0.55) {
                layer.gates.push_back(BeamSplitter{order[i], order[i + 1], random_reflectivity(rng)});
                i += 2;
                continue;
            }
            if (roll < 0.8) {
                layer.gates.push_back(PhaseShifter{order[i], random_phase(rng)});
            } else if (roll < 0.9 && k > 0) {
                layer.gates.push_back(Detector{order[i]});
            }
            ++i;
        }
        layers.push_back(std::move(layer));
    }
    layers.push_back(full_detection(width));
    return Circuit(width, std::move(layers), "random-" + std::to_string(width) + "-" + std::to_string(seed),
                   "random layers with mid-circuit detectors");
}

Circuit mesh6(std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Layer> layers;
    for (int round = 0; round < 5; ++round) {
        Layer even;
        for (PathIndex j = 0; j + 1 < 6; j += 2) {
            even.gates.push_back(BeamSplitter{j, j + 1, random_reflectivity(rng)});
        }
        layers.push_back(std::move(even));
        Layer odd;
        odd.gates.push_back(PhaseShifter{0, random_phase(rng)});
        for (PathIndex j = 1; j + 1 < 6; j += 2) {
            odd.gates.push_back(BeamSplitter{j, j + 1, random_reflectivity(rng)});
        }
        if (round == 2) {
            odd.gates.push_back(Detector{5});
        } else {
            odd.gates.push_back(PhaseShifter{5, random_phase(rng)});
        }
        layers.push_back(std::move(odd));
    }
    layers.push_back(full_detection(6));
    return Circuit(6, std::move(layers), "mesh-6", "six-path splitter mesh with a detector on path 6 midway");
}

std::vector<Scenario> builtin_scenarios() {
    std::vector<Scenario> out;
    for (int k = 0; k <= 8; ++k) {
        Circuit c = mach_zehnder(k * std::numbers::pi / 8);
        out.push_back({"mz_" + std::to_string(k) + ".circ",
                       Circuit(c.width(), c.layers(), "mach-zehnder-" + std::to_string(k),
                               "balanced interferometer, phase " + std::to_string(k) + " pi/8 on path 1"),
                       0,
                       std::nullopt});
    }
    out.push_back({"elitzur_vaidman.circ", elitzur_vaidman(), 0, OutcomeRecord{{OutcomeEvent::silent(1)}}});
    out.push_back({"zeno_chain.circ", zeno_chain(), 0, std::nullopt});
    for (std::uint64_t seed : {11, 12, 13, 14}) {
        out.push_back({"random3_" + std::to_string(seed) + ".circ", random_circuit(3, 8, seed), 0, std::nullopt});
    }
    out.push_back({"random3_15.circ", random_circuit(3, 12, 15), 1, std::nullopt});
    out.push_back({"mesh6.circ", mesh6(), 2, std::nullopt});
    return out;
}

}  // namespace qpath

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

#ifndef QPATH_CIRCUIT_H_
#define QPATH_CIRCUIT_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qpath {

/// Zero-based path label. The text formats use one-based labels.
using PathIndex = std::size_t;

struct PhaseShifter {
    PathIndex path;
    double omega;
    bool operator==(const PhaseShifter &) const = default;
};

/// Two paths crossing on a splitter with reflectivity R; transmissivity is 1 - R.
struct BeamSplitter {
    PathIndex s;
    PathIndex t;
    double reflectivity;
    double transmissivity() const {
        return 1.0 - reflectivity;
    }
    bool operator==(const BeamSplitter &) const = default;
};

struct Detector {
    PathIndex path;
    bool operator==(const Detector &) const = default;
};

using Gate = std::variant<PhaseShifter, BeamSplitter, Detector>;

/// One parallel configuration of gates. Paths not mentioned evolve freely.
struct Layer {
    std::vector<Gate> gates;
    bool operator==(const Layer &) const = default;
};

/// Disjoint-exhaustive split of the paths of one layer.
struct Partition {
    std::vector<PathIndex> free;
    std::vector<PathIndex> detectors;
    std::vector<PathIndex> phases;
    std::vector<std::pair<PathIndex, PathIndex>> splitters;
    bool operator==(const Partition &) const = default;
};

/// Raised for structurally invalid circuits (overlaps, bad indices, bad parameters).
class CircuitError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Raised by the DSL and JSON readers. Line and column are one-based; 0 when unknown.
class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t line, std::size_t column, const std::string &message);
    std::size_t line() const {
        return line_;
    }
    std::size_t column() const {
        return column_;
    }

   private:
    std::size_t line_;
    std::size_t column_;
};

/// Checks that every gate of `layer` uses distinct, in-range paths with valid
/// parameters and returns the F/D/S/B partition. F is the complement.
Partition validate_layer(const Layer &layer, std::size_t width);

class Circuit {
   public:
    /// Validates every layer; throws CircuitError on the first violation.
    Circuit(std::size_t width, std::vector<Layer> layers, std::string name = {}, std::string description = {});

    std::size_t width() const {
        return width_;
    }
    std::size_t depth() const {
        return layers_.size();
    }
    const std::vector<Layer> &layers() const {
        return layers_;
    }
    const Layer &layer(std::size_t k) const {
        return layers_[k];
    }
    const Partition &partition(std::size_t k) const {
        return partitions_[k];
    }
    const std::string &name() const {
        return name_;
    }
    const std::string &description() const {
        return description_;
    }
    bool has_detectors() const;

    bool operator==(const Circuit &other) const {
        return width_ == other.width_ && layers_ == other.layers_ && name_ == other.name_ &&
               description_ == other.description_;
    }

   private:
    std::size_t width_;
    std::vector<Layer> layers_;
    std::vector<Partition> partitions_;
    std::string name_;
    std::string description_;
};

/// Structural equality with real parameters compared to within `tolerance`.
bool approx_equal(const Circuit &a, const Circuit &b, double tolerance = 1e-12);

/// Line-oriented circuit format:
///
///     # comment
///     name mach-zehnder
///     paths 2
///     layer BS 1 2 R=0.5
///     layer S 1 w=1.5708
///     layer BS 1 2 R=0.5
///     layer D 1 | D 2
///
/// Path labels are one-based. An empty `layer` line is an all-free step.
Circuit parse_circuit(std::string_view text);
std::string serialize_circuit(const Circuit &circuit);

/// JSON mirror: {"paths": N, "layers": [[{"gate": "BS", "args": [1, 2, 0.5]}, ...], ...]}
/// with optional "name" and "description". Paths are one-based.
Circuit parse_circuit_json(std::string_view text);
std::string circuit_to_json(const Circuit &circuit);

/// Reads a circuit file, dispatching on content (JSON if the first
/// non-space character is '{', DSL otherwise).
Circuit load_circuit_file(const std::string &path);

/// Shortest decimal form that parses back to the same double.
std::string format_real(double value);

}  // namespace qpath

#endif  // QPATH_CIRCUIT_H_

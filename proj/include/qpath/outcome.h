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

#ifndef QPATH_OUTCOME_H_
#define QPATH_OUTCOME_H_

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpath/circuit.h"

namespace qpath {

/// Result of one detector layer: a click on exactly one path, or silence on all.
struct OutcomeEvent {
    std::size_t layer;               // zero-based layer index
    std::optional<PathIndex> click;  // nullopt means NoClick

    static OutcomeEvent clicked(std::size_t layer, PathIndex path) {
        return {layer, path};
    }
    static OutcomeEvent silent(std::size_t layer) {
        return {layer, std::nullopt};
    }

    bool operator==(const OutcomeEvent &) const = default;
    auto operator<=>(const OutcomeEvent &) const = default;
};

/// Ordered per-layer events. Only layers that carry detectors contribute.
struct OutcomeRecord {
    std::vector<OutcomeEvent> events;

    bool operator==(const OutcomeRecord &) const = default;
    auto operator<=>(const OutcomeRecord &) const = default;

    /// Event for `layer`, if that layer carried detectors.
    const OutcomeEvent *find(std::size_t layer) const;
    /// True when every event of `filter` appears verbatim in this record.
    bool matches(const OutcomeRecord &filter) const;
};

/// Canonical key, e.g. "L2:N;L4:C1" (one-based layers and paths). The
/// empty record encodes as "-".
std::string record_key(const OutcomeRecord &record);
OutcomeRecord parse_record_key(std::string_view key);

/// Exact probability per outcome record.
using OutcomeDistribution = std::map<OutcomeRecord, double>;

}  // namespace qpath

#endif  // QPATH_OUTCOME_H_

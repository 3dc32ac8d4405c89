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


#ifndef QPATH_PREPARATION_H_
#define QPATH_PREPARATION_H_

// Initial ensembles. A particle that has just been registered on path j
// carries full strength there and no strength anywhere else, while the
// amplitudes on the other paths are whatever the unknown source left behind.
// Two ways of producing such states: sieving arbitrary raw states through a
// full detector array, and a source whose other paths are blocked.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qpath/circuit.h"
#include "qpath/ontic.h"
#include "qpath/quantum.h"
#include "qpath/rng.h"
#include "qpath/vec.h"

namespace qpath {

class PreparationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Distribution of the leftover amplitudes on paths that were not registered.
class JunkSampler {
   public:
    enum class Kind {
        kZero,     // every leftover amplitude is 0
        kDisk,     // uniform on the closed unit disk
        kModulus,  // modulus uniform in [0,1], phase uniform
    };

    JunkSampler() = default;
    explicit JunkSampler(Kind kind) : kind_(kind) {
    }
    /// A sampler that ignores the caller's stream and draws from its own seed.
    static JunkSampler seeded(std::uint64_t seed, Kind kind = Kind::kModulus);

    /// Accepts "zero", "disk", "modulus", "seed:N".
    static JunkSampler parse(std::string_view spec);
    std::string to_string() const;

    Kind kind() const {
        return kind_;
    }
    const std::optional<std::uint64_t> &own_seed() const {
        return own_seed_;
    }

    Complex sample(Rng &rng) const;

   private:
    Kind kind_ = Kind::kModulus;
    std::optional<std::uint64_t> own_seed_;
};

using RawSampler = std::function<OnticState(Rng &)>;

/// Raw states with uniformly placed particle, junk amplitudes and random
/// dyadic (or zero) strengths.
RawSampler uniform_raw_sampler(std::size_t width, JunkSampler junk = {});

struct SieveOptions {
    double acceptance_floor = 1e-6;
};

struct SieveResult {
    OnticState state;
    std::uint64_t attempts = 0;
};

/// Draws raw states and passes each through detectors on every path; the
/// first one registered on `target` is returned.
SieveResult sieve_prepare(const RawSampler &raw, PathIndex target, Rng &rng, const SieveOptions &options = {});

OnticState source_prepare(std::size_t width, PathIndex path, const JunkSampler &junk, Rng &rng);

QuantumState quantum_init(PathIndex path, std::size_t width);

}  // namespace qpath

#endif  // QPATH_PREPARATION_H_

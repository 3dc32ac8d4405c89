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

#ifndef QPATH_RNG_H_
#define QPATH_RNG_H_

#include <cstdint>
#include <limits>

namespace qpath {

/// SplitMix64 bit generator. Satisfies UniformRandomBitGenerator, so it plugs
/// into <random> distributions, and it is cheap to construct, which matters
/// because every shot gets its own stream.
class Rng {
   public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed) : state_(seed) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        return mix(state_ += kGamma);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

   private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t state_;
};

/// Independent streams per (seed, shot, lane). Shot `i` is reproducible on its
/// own regardless of how shots are scheduled across workers.
enum class StreamLane : std::uint64_t {
    kEngine = 1,
    kPreparation = 2,
    kJunk = 3,
};

inline Rng shot_stream(std::uint64_t seed, std::uint64_t shot, StreamLane lane) {
    std::uint64_t key = Rng::mix(seed ^ Rng::mix(static_cast<std::uint64_t>(lane) * 0xd1b54a32d192ed03ULL));
    return Rng(Rng::mix(key + Rng::mix(shot + 0x632be59bd9b4e019ULL)));
}

}  // namespace qpath

#endif  // QPATH_RNG_H_

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


#include "qpath/preparation.h"

#include <bit>
#include <charconv>
#include <cmath>
#include <numbers>

namespace qpath {

JunkSampler JunkSampler::seeded(std::uint64_t seed, Kind kind) {
    JunkSampler j(kind);
    j.own_seed_ = seed;
    return j;
}

JunkSampler JunkSampler::parse(std::string_view spec) {
    if (spec == "zero") {
        return JunkSampler(Kind::kZero);
    }
    if (spec == "disk") {
        return JunkSampler(Kind::kDisk);
    }
    if (spec == "modulus" || spec == "default") {
        return JunkSampler(Kind::kModulus);
    }
    if (spec.starts_with("seed:")) {
        std::string_view digits = spec.substr(5);
        std::uint64_t seed = 0;
        auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
        if (ec == std::errc() && end == digits.data() + digits.size() && !digits.empty()) {
            return seeded(seed);
        }
    }
    throw std::invalid_argument("unknown junk sampler '" + std::string(spec) +
                                "' (expected zero, disk, modulus or seed:N)");
}

std::string JunkSampler::to_string() const {
    if (own_seed_) {
        return "seed:" + std::to_string(*own_seed_);
    }
    switch (kind_) {
        case Kind::kZero:
            return "zero";
        case Kind::kDisk:
            return "disk";
        case Kind::kModulus:
            return "modulus";
    }
    return "?";
}

Complex JunkSampler::sample(Rng &rng) const {
    switch (kind_) {
        case Kind::kZero:
            return 0.0;
        case Kind::kDisk: {
            const double r = std::sqrt(rng.uniform());
            return std::polar(r, 2 * std::numbers::pi * rng.uniform());
        }
        case Kind::kModulus: {
            const double r = rng.uniform();
            return std::polar(r, 2 * std::numbers::pi * rng.uniform());
        }
    }
    return 0.0;
}

RawSampler uniform_raw_sampler(std::size_t width, JunkSampler junk) {
    if (width == 0) {
        throw std::invalid_argument("raw sampler needs at least one path");
    }
    return [width, junk](Rng &rng) {
        OnticState s;
        s.q = static_cast<PathIndex>(rng() % width);
        s.u.resize(width);
        s.tau.resize(width);
        for (std::size_t j = 0; j < width; ++j) {
            s.u[j] = junk.sample(rng);
            const std::uint64_t bits = rng();
            // A quarter of the paths start without strength; the rest get 2^-k
            // with k geometric.
            if ((bits & 3) == 0) {
                s.tau[j] = Strength::zero();
            } else {
                s.tau[j] = Strength::pow2(static_cast<std::uint32_t>(std::countr_one(bits >> 2) % 16));
            }
        }
        return s;
    };
}

SieveResult sieve_prepare(const RawSampler &raw, PathIndex target, Rng &rng, const SieveOptions &options) {
    if (!(options.acceptance_floor > 0.0 && options.acceptance_floor <= 1.0)) {
        throw std::invalid_argument("acceptance floor must lie in (0,1]");
    }
    const auto max_attempts = static_cast<std::uint64_t>(std::ceil(10.0 / options.acceptance_floor));
    SieveResult out;
    for (out.attempts = 1; out.attempts <= max_attempts; ++out.attempts) {
        OnticState s = raw(rng);
        validate_ontic_state(s);
        if (target >= s.width()) {
            throw std::out_of_range("sieve target path " + std::to_string(target + 1) + " out of range");
        }
        bool registered = false;
        for (PathIndex j = 0; j < s.width(); ++j) {
            if (gate_detector(s, j) == Detection::kClick) {
                registered = j == target;
            }
        }
        if (registered) {
            out.state = std::move(s);
            return out;
        }
    }
    throw PreparationError("sieve gave up after " + std::to_string(max_attempts) +
                           " raw states without a click on path " + std::to_string(target + 1) +
                           "; acceptance is below the floor of " + std::to_string(options.acceptance_floor));
}

OnticState source_prepare(std::size_t width, PathIndex path, const JunkSampler &junk, Rng &rng) {
    if (path >= width) {
        throw std::out_of_range("source path " + std::to_string(path + 1) + " out of range for " +
                                std::to_string(width) + " paths");
    }
    OnticState s;
    s.q = path;
    s.u.resize(width);
    s.tau.assign(width, Strength::zero());
    for (std::size_t j = 0; j < width; ++j) {
        if (j == path) {
            s.u[j] = 1.0;
            s.tau[j] = Strength::one();
        } else {
            s.u[j] = junk.sample(rng);
        }
    }
    return s;
}

QuantumState quantum_init(PathIndex path, std::size_t width) {
    return QuantumState::basis(width, path);
}

}  // namespace qpath

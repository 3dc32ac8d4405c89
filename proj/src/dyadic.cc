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

#include "qpath/dyadic.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qpath {

Strength Strength::pow2(std::uint32_t exponent) {
    if (exponent == std::numeric_limits<std::uint32_t>::max()) {
        throw std::overflow_error("strength exponent overflow");
    }
    return Strength(exponent + 1);
}

Strength Strength::halved() const {
    if (is_zero()) {
        return *this;
    }
    return pow2(exponent() + 1);
}

double Strength::value() const {
    return is_zero() ? 0.0 : std::ldexp(1.0, -static_cast<int>(std::min<std::uint32_t>(exponent(), 2000)));
}

std::string Strength::to_string() const {
    return is_zero() ? "0" : "2^-" + std::to_string(exponent());
}

Strength max_strength(std::span<const Strength> strengths) {
    Strength best;
    for (Strength s : strengths) {
        best = std::max(best, s);
    }
    return best;
}

}  // namespace qpath

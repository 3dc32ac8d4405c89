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

#ifndef QPATH_DYADIC_H_
#define QPATH_DYADIC_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

namespace qpath {

/// Field strength restricted to {0} and {2^-k : k >= 0}.
///
/// Every strength the gate rules can produce from 0 or 1 is of this form
/// (halving, reset to 1, reset to 0, max), so equality and ordering are exact
/// integer operations and never go through floating point.
class Strength {
   public:
    /// Default-constructed strength is zero.
    constexpr Strength() = default;

    static constexpr Strength zero() {
        return Strength();
    }
    static constexpr Strength one() {
        return Strength(1);
    }
    /// 2^-exponent.
    static Strength pow2(std::uint32_t exponent);

    constexpr bool is_zero() const {
        return code_ == 0;
    }
    /// k for a strength of 2^-k. Undefined for zero.
    constexpr std::uint32_t exponent() const {
        return code_ - 1;
    }
    std::optional<std::uint32_t> maybe_exponent() const {
        if (is_zero()) {
            return std::nullopt;
        }
        return exponent();
    }

    /// Zero stays zero; 2^-k becomes 2^-(k+1).
    Strength halved() const;

    double value() const;
    std::string to_string() const;

    constexpr bool operator==(const Strength &) const = default;
    constexpr std::strong_ordering operator<=>(const Strength &other) const {
        if (code_ == other.code_) {
            return std::strong_ordering::equal;
        }
        if (code_ == 0) {
            return std::strong_ordering::less;
        }
        if (other.code_ == 0) {
            return std::strong_ordering::greater;
        }
        // Larger exponent means weaker field.
        return other.code_ <=> code_;
    }

   private:
    constexpr explicit Strength(std::uint32_t code) : code_(code) {
    }
    std::uint32_t code_ = 0;  // 0 encodes zero; otherwise exponent + 1.
};

/// Largest entry; zero for an empty or all-zero span.
Strength max_strength(std::span<const Strength> strengths);

}  // namespace qpath

#endif  // QPATH_DYADIC_H_

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

#include "qpath/vec.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace qpath {

double norm_squared(const CVector &v) {
    double s = 0;
    for (const auto &x : v) {
        s += std::norm(x);
    }
    return s;
}

double norm(const CVector &v) {
    return std::sqrt(norm_squared(v));
}

Complex inner(const CVector &a, const CVector &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("inner product of vectors with different lengths");
    }
    Complex s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::conj(a[k]) * b[k];
    }
    return s;
}

double ray_distance(const CVector &a, const CVector &b) {
    const double na = norm(a);
    const double nb = norm(b);
    if (a.size() != b.size() || na == 0 || nb == 0) {
        return std::numeric_limits<double>::infinity();
    }
    Complex overlap = inner(a, b);
    Complex phase = std::abs(overlap) > 0 ? std::conj(overlap) / std::abs(overlap) : Complex(1.0);
    double s = 0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        s += std::norm(a[k] / na - phase * b[k] / nb);
    }
    return std::sqrt(s);
}

bool ray_equal(const CVector &a, const CVector &b, double tolerance) {
    const double na = norm(a);
    const double nb = norm(b);
    if (a.size() != b.size() || na == 0 || nb == 0) {
        return false;
    }
    return std::abs(inner(a, b)) / (na * nb) >= 1.0 - tolerance;
}

CVector basis_vector(std::size_t n, std::size_t j) {
    if (j >= n) {
        throw std::out_of_range("basis index " + std::to_string(j + 1) + " out of range for " + std::to_string(n) +
                                " paths");
    }
    CVector v(n, 0.0);
    v[j] = 1.0;
    return v;
}

}  // namespace qpath

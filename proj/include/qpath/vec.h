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

#ifndef QPATH_VEC_H_
#define QPATH_VEC_H_

#include <cmath>
#include <complex>
#include <vector>

namespace qpath {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

double norm_squared(const CVector &v);
double norm(const CVector &v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const CVector &a, const CVector &b);

/// Euclidean distance between the normalized rays of a and b after aligning
/// the global phase of b to a. Zero iff the rays coincide.
double ray_distance(const CVector &a, const CVector &b);

/// |<a|b>| >= 1 - tolerance on normalized copies; zero vectors are never equal.
bool ray_equal(const CVector &a, const CVector &b, double tolerance = 1e-9);

/// e_j in C^n.
CVector basis_vector(std::size_t n, std::size_t j);

/// The 2x2 splitter action (i sqrt R, sqrt T; sqrt T, i sqrt R) on (a, b).
inline void splitter_mix(double reflectivity, Complex &a, Complex &b) {
    const double r = std::sqrt(reflectivity);
    const double t = std::sqrt(1.0 - reflectivity);
    const Complex a2 = kI * r * a + t * b;
    const Complex b2 = t * a + kI * r * b;
    a = a2;
    b = b2;
}

}  // namespace qpath

#endif  // QPATH_VEC_H_

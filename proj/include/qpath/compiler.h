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


#ifndef QPATH_COMPILER_H_
#define QPATH_COMPILER_H_

// Compiles an N x N unitary into beam splitters and phase shifters.
//
// The only splitter available is B(R) = [[i sqrt(R), sqrt(T)], [sqrt(T), i sqrt(R)]]
// on a pair (s, t). Preceded by a phase gamma on path s it forms the block
//   W(R, gamma) = B(R) * S_s(gamma),
// which is enough to null any chosen entry of a row. Working on the rows from
// the bottom up, right-multiplying U by W^dagger on the columns (t, s) =
// (c, c+1) with a = U[r][s], b = U[r][t] kills U[r][c] when
//   R = |a|^2 / (|a|^2 + |b|^2),   gamma = arg(a) - arg(b) - pi/2.
// What is left after all sub-diagonal entries are gone is a diagonal D, so
//   U = D * W_K * ... * W_1
// and the circuit runs W_1 first, W_K last, then one layer of phases for D
// (relative to D[0][0]; the global phase is dropped).

#include <cstdint>
#include <stdexcept>

#include <Eigen/Dense>

#include "qpath/circuit.h"

namespace qpath {

using CMatrix = Eigen::MatrixXcd;

class CompileError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kUnitarityTolerance = 1e-9;

/// max |(U^dagger U - 1)_ij|; infinity for a non-square matrix.
double unitarity_defect(const CMatrix &u);
bool is_unitary(const CMatrix &u, double tolerance = kUnitarityTolerance);

/// Throws CompileError when `u` is not unitary within 1e-9.
Circuit reck_decompose(const CMatrix &u);

/// Product of the layer unitaries, first layer rightmost. Throws CompileError
/// if the circuit contains a detector.
CMatrix reconstruct_unitary(const Circuit &circuit);

/// Max entry deviation of `a` from `b` after aligning the global phase.
double ray_matrix_distance(const CMatrix &a, const CMatrix &b);

/// Haar-distributed unitary from QR of a complex Gaussian matrix.
CMatrix random_unitary(std::size_t n, std::uint64_t seed);

}  // namespace qpath

#endif  // QPATH_COMPILER_H_

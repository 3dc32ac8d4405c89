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


#ifndef QPATH_STATS_H_
#define QPATH_STATS_H_

#include <cstdint>
#include <map>
#include <vector>

#include "qpath/outcome.h"

namespace qpath {

/// Below this an exact probability counts as zero.
inline constexpr double kZeroProbability = 1e-12;

/// 1/2 sum |p - q| over the union of both supports.
double total_variation(const OutcomeDistribution &p, const OutcomeDistribution &q);
double total_variation(const std::vector<double> &p, const std::vector<double> &q);

struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int dof = 0;
    /// Observations that fell on an outcome of zero expected probability.
    std::uint64_t hard_fails = 0;
};

/// Pearson goodness of fit. Zero-probability outcomes are pooled out of the
/// statistic; any count there is reported as a hard fail.
ChiSquareResult chi_square_goodness(const std::vector<std::uint64_t> &counts, const std::vector<double> &expected);

/// Upper tail P(X >= x) of the chi-square distribution.
double chi_square_sf(double x, double dof);

struct Interval {
    double low = 0.0;
    double high = 0.0;

    bool contains(double x) const {
        return x >= low && x <= high;
    }
};

/// p +- z * sqrt(p(1-p)/n), clipped to [0, 1].
Interval binomial_interval(double p, std::uint64_t n, double z = 5.0);

/// Two independent frequencies of the same outcome agree within z joint sigmas
/// (pooled estimate of p).
bool frequencies_agree(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2, std::uint64_t n2, double z = 5.0);

}  // namespace qpath

#endif  // QPATH_STATS_H_

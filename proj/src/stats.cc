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


#include "qpath/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

namespace qpath {

double total_variation(const OutcomeDistribution &p, const OutcomeDistribution &q) {
    double sum = 0.0;
    for (const auto &[record, pv] : p) {
        auto it = q.find(record);
        sum += std::abs(pv - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto &[record, qv] : q) {
        if (!p.contains(record)) {
            sum += std::abs(qv);
        }
    }
    return 0.5 * sum;
}

double total_variation(const std::vector<double> &p, const std::vector<double> &q) {
    if (p.size() != q.size()) {
        throw std::invalid_argument("distributions over different outcome sets");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sum += std::abs(p[i] - q[i]);
    }
    return 0.5 * sum;
}

double chi_square_sf(double x, double dof) {
    if (dof <= 0) {
        throw std::invalid_argument("chi-square needs positive degrees of freedom");
    }
    if (x <= 0) {
        return 1.0;
    }
    return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

ChiSquareResult chi_square_goodness(const std::vector<std::uint64_t> &counts, const std::vector<double> &expected) {
    if (counts.size() != expected.size()) {
        throw std::invalid_argument("counts and expected probabilities differ in length");
    }
    ChiSquareResult out;
    std::uint64_t n = 0;
    double mass = 0.0;
    int cells = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (expected[i] < 0) {
            throw std::invalid_argument("negative expected probability");
        }
        if (expected[i] <= kZeroProbability) {
            out.hard_fails += counts[i];
        } else {
            n += counts[i];
            mass += expected[i];
            ++cells;
        }
    }
    out.dof = std::max(cells - 1, 0);
    if (n == 0 || out.dof == 0) {
        return out;
    }
    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (expected[i] > kZeroProbability) {
            const double e = static_cast<double>(n) * expected[i] / mass;
            const double d = static_cast<double>(counts[i]) - e;
            out.statistic += d * d / e;
        }
    }
    out.p_value = chi_square_sf(out.statistic, out.dof);
    return out;
}

Interval binomial_interval(double p, std::uint64_t n, double z) {
    p = std::clamp(p, 0.0, 1.0);
    if (n == 0) {
        return {0.0, 1.0};
    }
    const double half = z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
    return {std::max(0.0, p - half), std::min(1.0, p + half)};
}

bool frequencies_agree(std::uint64_t k1, std::uint64_t n1, std::uint64_t k2, std::uint64_t n2, double z) {
    if (n1 == 0 || n2 == 0) {
        return true;
    }
    const double f1 = static_cast<double>(k1) / static_cast<double>(n1);
    const double f2 = static_cast<double>(k2) / static_cast<double>(n2);
    const double p = static_cast<double>(k1 + k2) / static_cast<double>(n1 + n2);
    const double sigma = std::sqrt(p * (1.0 - p) * (1.0 / static_cast<double>(n1) + 1.0 / static_cast<double>(n2)));
    return std::abs(f1 - f2) <= z * sigma;
}

}  // namespace qpath

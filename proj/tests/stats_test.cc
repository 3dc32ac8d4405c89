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

#include <cmath>

#include <gtest/gtest.h>

using namespace qpath;

namespace {

OutcomeDistribution dist(std::initializer_list<std::pair<const char *, double>> items) {
    OutcomeDistribution d;
    for (auto [k, p] : items) {
        d[parse_record_key(k)] = p;
    }
    return d;
}

}  // namespace

TEST(total_variation, examples) {
    EXPECT_EQ(total_variation(std::vector<double>{0.3, 0.7}, std::vector<double>{0.3, 0.7}), 0.0);
    EXPECT_EQ(total_variation(std::vector<double>{1, 0}, std::vector<double>{0, 1}), 1.0);
    EXPECT_NEAR(total_variation(std::vector<double>{0.3, 0.7}, std::vector<double>{0.25, 0.75}), 0.05, 1e-15);
    EXPECT_THROW(total_variation(std::vector<double>{1}, std::vector<double>{0.5, 0.5}), std::invalid_argument);
}

TEST(total_variation, disjoint_supports) {
    EXPECT_EQ(total_variation(dist({{"L1:C1", 1.0}}), dist({{"L1:C2", 1.0}})), 1.0);
    EXPECT_NEAR(total_variation(dist({{"L1:C1", 0.3}, {"L1:C2", 0.7}}), dist({{"L1:C1", 0.25}, {"L1:C2", 0.75}})),
                0.05, 1e-15);
}

TEST(chi_square_goodness, proportional_counts) {
    ChiSquareResult r = chi_square_goodness({250, 750}, {0.25, 0.75});
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.p_value, 1.0);
    EXPECT_EQ(r.dof, 1);
    EXPECT_EQ(chi_square_goodness({50000, 50000}, {0.5, 0.5}).statistic, 0.0);
}

TEST(chi_square_goodness, hand_computed) {
    // (60-50)^2/50 + (40-50)^2/50 = 4; P(chi2_1 >= 4) = erfc(sqrt(2)).
    ChiSquareResult r = chi_square_goodness({60, 40}, {0.5, 0.5});
    EXPECT_NEAR(r.statistic, 4.0, 1e-12);
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(2.0)), 1e-12);
}

TEST(chi_square_goodness, impossible_outcome_is_hard_fail) {
    ChiSquareResult r = chi_square_goodness({90, 10, 0}, {1.0, 0.0, 0.0});
    EXPECT_EQ(r.hard_fails, 10u);
    EXPECT_EQ(r.dof, 0);
    ChiSquareResult q = chi_square_goodness({45, 55, 3}, {0.5, 0.5, 1e-15});
    EXPECT_EQ(q.hard_fails, 3u);
    EXPECT_EQ(q.dof, 1);
}

TEST(chi_square_goodness, bad_input) {
    EXPECT_THROW(chi_square_goodness({1, 2}, {1.0}), std::invalid_argument);
    EXPECT_THROW(chi_square_goodness({1}, {-0.5}), std::invalid_argument);
}

TEST(chi_square_sf, reference_values) {
    // Table values of the chi-square upper tail.
    EXPECT_NEAR(chi_square_sf(3.841458820694124, 1), 0.05, 1e-12);
    EXPECT_NEAR(chi_square_sf(9.210340371976182, 2), 0.01, 1e-12);
    EXPECT_NEAR(chi_square_sf(2.0, 2), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(chi_square_sf(9.260, 23), 0.995, 5e-4);
    EXPECT_NEAR(chi_square_sf(44.181, 23), 0.005, 5e-5);
    EXPECT_EQ(chi_square_sf(0.0, 3), 1.0);
    EXPECT_THROW(chi_square_sf(1.0, 0), std::invalid_argument);
}

TEST(binomial_interval, five_sigma) {
    Interval ci = binomial_interval(0.25, 100000);
    const double sigma = std::sqrt(0.25 * 0.75 / 100000);
    EXPECT_NEAR(ci.low, 0.25 - 5 * sigma, 1e-15);
    EXPECT_NEAR(ci.high, 0.25 + 5 * sigma, 1e-15);
    EXPECT_NEAR(sigma, 0.00137, 1e-5);
    Interval edge = binomial_interval(1.0000000000000004, 10);
    EXPECT_TRUE(edge.contains(1.0));
    Interval zero = binomial_interval(0.0, 10);
    EXPECT_TRUE(zero.contains(0.0));
    EXPECT_FALSE(zero.contains(0.1));
}

TEST(frequencies_agree, joint_interval) {
    EXPECT_TRUE(frequencies_agree(2500, 10000, 2450, 10000));
    EXPECT_FALSE(frequencies_agree(2500, 10000, 3500, 10000));
    EXPECT_TRUE(frequencies_agree(0, 0, 5, 10));
}

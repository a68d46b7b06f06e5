// Copyright 2026 The trapver Authors
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

#include "trapver/ftcalc.hpp"

#include <cmath>

#include "gtest/gtest.h"

using namespace trapver;

TEST(Threshold, phenomenological) {
    EXPECT_NEAR(phenomenological_threshold(0.134), 0.1181658, 1e-7);
    EXPECT_DOUBLE_EQ(phenomenological_threshold(0.2), 1.0 / 6);
    EXPECT_EQ(phenomenological_threshold(0), 0);
}

TEST(Threshold, physical) {
    EXPECT_NEAR(physical_threshold(), 0.0196943, 1e-6);
    EXPECT_NEAR(physical_threshold(0.134, 1), 0.1181658, 1e-7);
    EXPECT_DOUBLE_EQ(physical_threshold(0.2, 6), 1.0 / 36);
    EXPECT_THROW(physical_threshold(0.134, 0), std::invalid_argument);
}

TEST(CubeFailure, examples_and_range) {
    EXPECT_EQ(cube_failure_prob(0), 0);
    EXPECT_NEAR(cube_failure_prob(physical_threshold() / 100), 0.00706, 1e-4);
    EXPECT_DOUBLE_EQ(cube_failure_prob(1.0 / 12), 0.5);
    EXPECT_THROW(cube_failure_prob(0.1), std::domain_error);
    double last = 0;
    for (int i = 1; i <= 100; i++) {
        double p = cube_failure_prob(i / 1200.0);
        EXPECT_GE(p, last);
        EXPECT_LE(p, 0.5);
        last = p;
    }
}

TEST(Overhead, table_values) {
    const double t = physical_threshold();
    EXPECT_NEAR(detection_overhead(t / 100).real, 54, 1);
    EXPECT_NEAR(detection_overhead(t / 100).rounded, 54, 1);
    EXPECT_NEAR(detection_overhead(t / 50).real / 2863, 1, 0.05);
    double m20 = detection_overhead(t / 20).real;
    EXPECT_GE(m20, 1.5e8);
    EXPECT_LE(m20, 6e8);
}

TEST(Overhead, monotone_in_eps_and_syndromes) {
    double last = 0;
    for (int i = 0; i <= 50; i++) {
        double m = detection_overhead(i * 1e-5).real;
        EXPECT_GE(m, last);
        last = m;
    }
    EXPECT_LE(detection_overhead(1e-4, 100).real, detection_overhead(1e-4, 200).real);
    EXPECT_EQ(detection_overhead(0).rounded, 1);
}

TEST(Overhead, table_defaults_and_limits) {
    auto rows = overhead_table();
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_NEAR(rows[2].overhead_real, 54, 1);
    auto at_threshold = overhead_table({1.0});
    EXPECT_TRUE(at_threshold[0].flagged);
    auto tiny = overhead_table({1e-9});
    EXPECT_NEAR(tiny[0].overhead_real, 1, 1e-5);
    EXPECT_THROW(overhead_table({1.0 / 100}, 3), std::invalid_argument);
    EXPECT_NO_THROW(overhead_table({1.0 / 100}, 3, 1000));
    EXPECT_THROW(overhead_table({0.0}), std::invalid_argument);
}

TEST(Series, examples) {
    EXPECT_EQ(faulty_series_bound(0, 2, 100).value, 0);
    SeriesBound edge = faulty_series_bound(1.0 / 6, 4, 100);
    EXPECT_FALSE(edge.convergent);
    EXPECT_NEAR(edge.value, 2 * 1.2 * 97, 1e-9);
    SeriesBound a = faulty_series_bound(0.01, 4, 100);
    SeriesBound b = faulty_series_bound(0.01, 5, 100);
    EXPECT_TRUE(a.convergent);
    EXPECT_GT(a.value, b.value);
    EXPECT_GT(faulty_series_bound(0.02, 4, 100).value, a.value);
}

TEST(Series, partial_sums_converge_to_limit) {
    SeriesBound lim = faulty_series_bound(0.05, 2, 10);
    double prev_gap = INFINITY;
    for (int n : {10, 20, 40, 80}) {
        double gap = lim.limit - faulty_series_bound(0.05, 2, n).value;
        EXPECT_GE(gap, -1e-15);
        if (prev_gap > 1e-12 * lim.limit) {
            EXPECT_LT(gap, prev_gap);
        }
        prev_gap = gap;
    }
    EXPECT_LT(prev_gap, 1e-6 * lim.limit);
}

TEST(Series, prefactor_scales_value_not_convergence) {
    SeriesBound one = faulty_series_bound(0.01, 2, 50, 1);
    SeriesBound ten = faulty_series_bound(0.01, 2, 50, 10);
    EXPECT_NEAR(ten.value, 10 * one.value, 1e-12 * ten.value);
    EXPECT_EQ(one.convergent, ten.convergent);
}

TEST(Report, fields) {
    FtConfig cfg;
    cfg.eps = physical_threshold() / 100;
    FtReport r = ft_report(cfg);
    EXPECT_NEAR(r.physical_threshold, 0.0196943, 1e-6);
    EXPECT_EQ(r.overhead, 55);
    EXPECT_TRUE(r.convergent);
    EXPECT_EQ(r.poly_prefactor, 1);
    cfg.eps = 1;
    EXPECT_THROW(ft_report(cfg), std::invalid_argument);
}

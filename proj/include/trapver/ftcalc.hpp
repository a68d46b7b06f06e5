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

#ifndef TRAPVER_FTCALC_HPP
#define TRAPVER_FTCALC_HPP

#include <cstdint>
#include <vector>

namespace trapver {

/// Faces of a cube syndrome in the cluster lattice.
inline constexpr int kCubeFaces = 6;
/// Syndromes that can affect a single trap at code distance 2.
inline constexpr int64_t kDistanceTwoSyndromes = 564;

struct FtConfig {
    int distance = 2;
    double eps = 0;
    int64_t syndromes = kDistanceTwoSyndromes;
    int ops_per_syndrome = 6;
    double walk_growth = 5;
    double walk_prefactor = 6.0 / 5;
    double poly_prefactor = 1;
    double ratio_bound = 0.134;

    void validate() const;
};

struct FtReport {
    double phenomenological_threshold = 0;
    double physical_threshold = 0;
    double cube_failure = 0;
    double overhead_real = 0;
    double overhead = 0;  // rounded up
    bool overhead_flagged = false;
    double series_bound = 0;
    double series_limit = 0;  // infinite tail, only meaningful when convergent
    bool convergent = false;
    double poly_prefactor = 1;
};

/// c / (1 + c)
double phenomenological_threshold(double ratio = 0.134);
double physical_threshold(double ratio = 0.134, int ops_per_syndrome = 6);
/// (1 - (1 - 2 c_ops eps)^6) / 2
double cube_failure_prob(double eps, int ops_per_syndrome = 6);

struct Overhead {
    double real = 0;
    double rounded = 0;
    /// Too large to be an exact integer in a double.
    bool flagged = false;
};

/// 1 / (1 - p_c)^S
Overhead detection_overhead(double eps, int64_t syndromes = kDistanceTwoSyndromes, int ops_per_syndrome = 6);

struct SeriesBound {
    double value = 0;
    double limit = 0;
    bool convergent = false;
};

/// 2 sum_{L=L_d}^{N} poly (6/5) 5^L (eps/(1-eps))^L
SeriesBound faulty_series_bound(double eps, int min_length, int max_length, double poly_prefactor = 1,
                                double growth = 5, double walk_prefactor = 6.0 / 5);

struct OverheadRow {
    double fraction = 0;
    double eps = 0;
    double cube_failure = 0;
    double overhead_real = 0;
    double overhead = 0;
    bool flagged = false;
};

std::vector<OverheadRow> overhead_table(const std::vector<double> &fractions = {1.0 / 20, 1.0 / 50, 1.0 / 100},
                                        int distance = 2, int64_t syndromes = 0, int ops_per_syndrome = 6);

/// Full report for one configuration; the series runs from L = distance to L = series_length.
FtReport ft_report(const FtConfig &cfg, int series_length = 100);

}  // namespace trapver

#endif

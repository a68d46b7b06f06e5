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
#include <stdexcept>
#include <string>

namespace trapver {

namespace {

// Largest double below which every integer is exactly representable.
constexpr double kExactIntegerLimit = 9007199254740992.0;

}  // namespace

void FtConfig::validate() const {
    if (!(eps >= 0 && eps < 1)) {
        throw std::invalid_argument("eps must lie in [0, 1)");
    }
    if (distance < 1 || syndromes < 1 || ops_per_syndrome < 1) {
        throw std::invalid_argument("distance, syndrome count and operations per syndrome must be at least 1");
    }
    if (!(walk_growth > 0 && walk_prefactor > 0 && poly_prefactor > 0 && ratio_bound >= 0)) {
        throw std::invalid_argument("walk constants must be positive");
    }
}

double phenomenological_threshold(double ratio) {
    if (!(ratio >= 0)) {
        throw std::invalid_argument("threshold ratio must be nonnegative");
    }
    return ratio / (1 + ratio);
}

double physical_threshold(double ratio, int ops_per_syndrome) {
    if (ops_per_syndrome < 1) {
        throw std::invalid_argument("operations per syndrome must be at least 1");
    }
    return phenomenological_threshold(ratio) / ops_per_syndrome;
}

double cube_failure_prob(double eps, int ops_per_syndrome) {
    if (!(eps >= 0)) {
        throw std::invalid_argument("eps must be nonnegative");
    }
    double base = 1 - 2.0 * ops_per_syndrome * eps;
    if (base < 0) {
        throw std::domain_error(
            "eps = " + std::to_string(eps) + " is beyond the cube formula's range (2 c_ops eps must be <= 1)");
    }
    return (1 - std::pow(base, kCubeFaces)) / 2;
}

Overhead detection_overhead(double eps, int64_t syndromes, int ops_per_syndrome) {
    if (syndromes < 1) {
        throw std::invalid_argument("syndrome count must be at least 1");
    }
    double pc = cube_failure_prob(eps, ops_per_syndrome);
    if (pc >= 1) {
        throw std::domain_error("cube failure probability is 1");
    }
    Overhead o;
    o.real = std::exp(-static_cast<double>(syndromes) * std::log1p(-pc));
    o.rounded = std::ceil(o.real);
    o.flagged = !(o.real < kExactIntegerLimit);
    return o;
}

SeriesBound faulty_series_bound(double eps, int min_length, int max_length, double poly_prefactor, double growth,
                                double walk_prefactor) {
    if (!(eps >= 0 && eps < 1)) {
        throw std::invalid_argument("eps must lie in [0, 1)");
    }
    if (min_length < 0) {
        throw std::invalid_argument("minimum walk length must be nonnegative");
    }
    SeriesBound out;
    const double ratio = eps / (1 - eps);
    const double q = growth * ratio;
    // Ratios within rounding of 1/growth count as the divergent boundary.
    out.convergent = q < 1 - 1e-12;
    const double scale = 2 * poly_prefactor * walk_prefactor;
    for (int len = min_length; len <= max_length; len++) {
        out.value += scale * std::pow(q, len);
    }
    out.limit = out.convergent ? scale * std::pow(q, min_length) / (1 - q) : INFINITY;
    return out;
}

std::vector<OverheadRow> overhead_table(const std::vector<double> &fractions, int distance, int64_t syndromes,
                                        int ops_per_syndrome) {
    if (syndromes == 0) {
        if (distance != 2) {
            throw std::invalid_argument(
                "no syndrome count is known for distance " + std::to_string(distance) + "; pass one explicitly");
        }
        syndromes = kDistanceTwoSyndromes;
    }
    const double threshold = physical_threshold(0.134, ops_per_syndrome);
    std::vector<OverheadRow> rows;
    for (double f : fractions) {
        if (!(f > 0 && f <= 1)) {
            throw std::invalid_argument("threshold fractions must lie in (0, 1]");
        }
        OverheadRow row;
        row.fraction = f;
        row.eps = f * threshold;
        row.cube_failure = cube_failure_prob(row.eps, ops_per_syndrome);
        Overhead o = detection_overhead(row.eps, syndromes, ops_per_syndrome);
        row.overhead_real = o.real;
        row.overhead = o.rounded;
        row.flagged = o.flagged;
        rows.push_back(row);
    }
    return rows;
}

FtReport ft_report(const FtConfig &cfg, int series_length) {
    cfg.validate();
    FtReport r;
    r.phenomenological_threshold = phenomenological_threshold(cfg.ratio_bound);
    r.physical_threshold = physical_threshold(cfg.ratio_bound, cfg.ops_per_syndrome);
    r.cube_failure = cube_failure_prob(cfg.eps, cfg.ops_per_syndrome);
    Overhead o = detection_overhead(cfg.eps, cfg.syndromes, cfg.ops_per_syndrome);
    r.overhead_real = o.real;
    r.overhead = o.rounded;
    r.overhead_flagged = o.flagged;
    SeriesBound s = faulty_series_bound(cfg.eps, cfg.distance, series_length, cfg.poly_prefactor, cfg.walk_growth,
                                        cfg.walk_prefactor);
    r.series_bound = s.value;
    r.series_limit = s.limit;
    r.convergent = s.convergent;
    r.poly_prefactor = cfg.poly_prefactor;
    return r;
}

}  // namespace trapver

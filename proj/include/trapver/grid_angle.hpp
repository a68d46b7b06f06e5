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

#ifndef TRAPVER_GRID_ANGLE_HPP
#define TRAPVER_GRID_ANGLE_HPP

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

namespace trapver {

/// An angle on the 16-point grid {k*pi/8}. Stored as k in [0, 16).
class GridAngle {
   public:
    static constexpr int kSteps = 16;

    constexpr GridAngle() = default;

    /// Reduces any integer multiple of pi/8 into range.
    static constexpr GridAngle wrap(int k) {
        int r = k % kSteps;
        if (r < 0) {
            r += kSteps;
        }
        return GridAngle(static_cast<uint8_t>(r));
    }

    /// Rejects k outside [0, 16).
    static GridAngle checked(int k) {
        if (k < 0 || k >= kSteps) {
            throw std::out_of_range("grid angle index " + std::to_string(k) + " is outside [0, 16)");
        }
        return GridAngle(static_cast<uint8_t>(k));
    }

    /// Rejects radians that are not a multiple of pi/8 (to within 1e-9).
    static GridAngle from_radians(double radians) {
        double steps = radians / (std::numbers::pi / 8);
        double nearest = std::round(steps);
        if (!std::isfinite(steps) || std::abs(steps - nearest) > 1e-9) {
            throw std::invalid_argument("angle " + std::to_string(radians) + " is not on the pi/8 grid");
        }
        return wrap(static_cast<int>(std::fmod(nearest, 16.0)));
    }

    constexpr int k() const {
        return k_;
    }
    double radians() const {
        return k_ * (std::numbers::pi / 8);
    }

    constexpr GridAngle operator+(GridAngle o) const {
        return wrap(k_ + o.k_);
    }
    constexpr GridAngle operator-() const {
        return wrap(-static_cast<int>(k_));
    }
    constexpr bool operator==(const GridAngle &) const = default;

   private:
    explicit constexpr GridAngle(uint8_t k) : k_(k) {
    }
    uint8_t k_ = 0;
};

inline constexpr GridAngle kAngleZero = GridAngle::wrap(0);
inline constexpr GridAngle kAngleHalfPi = GridAngle::wrap(4);
inline constexpr GridAngle kAnglePi = GridAngle::wrap(8);

}  // namespace trapver

#endif

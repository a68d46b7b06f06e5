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

#ifndef TRAPVER_PHILOX_HPP
#define TRAPVER_PHILOX_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace trapver {

/// Philox4x32-10 block function (Salmon et al. counter-based generator).
inline std::array<uint32_t, 4> philox4x32_10(std::array<uint32_t, 4> ctr, std::array<uint32_t, 2> key) {
    constexpr uint32_t kMul0 = 0xD2511F53u;
    constexpr uint32_t kMul1 = 0xCD9E8D57u;
    constexpr uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; round++) {
        uint64_t p0 = uint64_t{kMul0} * ctr[0];
        uint64_t p1 = uint64_t{kMul1} * ctr[2];
        uint32_t hi0 = static_cast<uint32_t>(p0 >> 32), lo0 = static_cast<uint32_t>(p0);
        uint32_t hi1 = static_cast<uint32_t>(p1 >> 32), lo1 = static_cast<uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// Stream purposes within one repetition.
enum class StreamPurpose : uint32_t {
    key = 0,
    attack = 1,
    joint = 2,
    scheme = 3,
    fidelity = 4,
    slot_base = 16,
};

inline uint64_t stream_id(uint64_t repetition, StreamPurpose purpose, uint32_t offset = 0) {
    return (repetition << 32) | (static_cast<uint32_t>(purpose) + offset);
}

/// Sequential view of one Philox stream: key = root seed, counter = (block, stream).
///
/// Satisfies UniformRandomBitGenerator, but callers should use the helpers below
/// rather than <random> distributions, whose output is not portable.
class PhiloxStream {
   public:
    using result_type = uint64_t;

    PhiloxStream(uint64_t seed, uint64_t stream) : seed_(seed), stream_(stream) {
    }

    static constexpr result_type min() {
        return 0;
    }
    static constexpr result_type max() {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() {
        if (used_ == 2) {
            refill();
        }
        return buffer_[used_++];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [0, n), unbiased.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        while (true) {
            uint64_t x = (*this)();
            if (x >= threshold) {
                return x % n;
            }
        }
    }

    uint8_t bit() {
        return static_cast<uint8_t>((*this)() >> 63);
    }

    bool bernoulli(double p) {
        return uniform01() < p;
    }

    uint64_t seed() const {
        return seed_;
    }
    uint64_t stream() const {
        return stream_;
    }

   private:
    void refill() {
        std::array<uint32_t, 4> ctr{
            static_cast<uint32_t>(block_),
            static_cast<uint32_t>(block_ >> 32),
            static_cast<uint32_t>(stream_),
            static_cast<uint32_t>(stream_ >> 32)};
        std::array<uint32_t, 2> key{static_cast<uint32_t>(seed_), static_cast<uint32_t>(seed_ >> 32)};
        auto out = philox4x32_10(ctr, key);
        buffer_[0] = (uint64_t{out[1]} << 32) | out[0];
        buffer_[1] = (uint64_t{out[3]} << 32) | out[2];
        block_++;
        used_ = 0;
    }

    uint64_t seed_;
    uint64_t stream_;
    uint64_t block_ = 0;
    std::array<uint64_t, 2> buffer_{};
    int used_ = 2;
};

}  // namespace trapver

#endif

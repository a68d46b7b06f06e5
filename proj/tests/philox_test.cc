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

#include "trapver/philox.hpp"

#include <set>
#include <vector>

#include "gtest/gtest.h"

using namespace trapver;

TEST(Philox, known_answers) {
    using Ctr = std::array<uint32_t, 4>;
    EXPECT_EQ(philox4x32_10(Ctr{0, 0, 0, 0}, {0, 0}), (Ctr{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10(Ctr{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (Ctr{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10(Ctr{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (Ctr{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(Philox, stream_is_a_pure_function_of_seed_and_id) {
    PhiloxStream a(42, stream_id(7, StreamPurpose::key));
    PhiloxStream b(42, stream_id(7, StreamPurpose::key));
    for (int i = 0; i < 100; i++) {
        ASSERT_EQ(a(), b());
    }
}

TEST(Philox, distinct_streams_differ) {
    std::set<uint64_t> firsts;
    for (uint64_t rep = 0; rep < 4; rep++) {
        for (uint32_t off = 0; off < 8; off++) {
            firsts.insert(PhiloxStream(1, stream_id(rep, StreamPurpose::slot_base, off))());
        }
    }
    firsts.insert(PhiloxStream(2, stream_id(0, StreamPurpose::slot_base))());
    EXPECT_EQ(firsts.size(), 33u);
}

TEST(Philox, stream_id_layout) {
    EXPECT_EQ(stream_id(0, StreamPurpose::key), 0u);
    EXPECT_EQ(stream_id(3, StreamPurpose::slot_base, 2), (uint64_t{3} << 32) | 18u);
}

TEST(Philox, below_is_roughly_uniform) {
    PhiloxStream rng(9, 0);
    std::vector<int> hist(16);
    const int n = 160000;
    for (int i = 0; i < n; i++) {
        uint64_t v = rng.below(16);
        ASSERT_LT(v, 16u);
        hist[v]++;
    }
    double chi2 = 0;
    for (int h : hist) {
        chi2 += (h - n / 16.0) * (h - n / 16.0) / (n / 16.0);
    }
    // 99.9% quantile of chi2 with 15 dof is about 37.7.
    EXPECT_LT(chi2, 37.7);
}

TEST(Philox, uniform01_range_and_mean) {
    PhiloxStream rng(5, 11);
    double sum = 0;
    for (int i = 0; i < 100000; i++) {
        double u = rng.uniform01();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 100000, 0.5, 0.005);
}

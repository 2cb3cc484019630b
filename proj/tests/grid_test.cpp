// Copyright 2026 The dogbe Authors
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

#include "dogbe/grid.hpp"

#include <algorithm>
#include <random>

#include "gtest/gtest.h"

using namespace dogbe;

TEST(grid, spec_fields) {
    GridSpec g(2, 3);
    EXPECT_EQ(g.points(), 8);
    EXPECT_DOUBLE_EQ(g.spacing() * static_cast<double>(g.points()), 1.0);
    EXPECT_EQ(g.size(), 64);
    EXPECT_EQ(GridSpec::from_points(1, 16), GridSpec(1, 4));
    EXPECT_THROW(GridSpec::from_points(1, 12), DomainError);
    EXPECT_THROW(GridSpec::from_points(1, 1), DomainError);
    EXPECT_THROW(GridSpec(0, 3), DomainError);
}

TEST(grid, flatten_examples) {
    EXPECT_EQ(flatten({5}, GridSpec::from_points(1, 16)), 5);
    EXPECT_EQ(flatten({1, 2}, GridSpec::from_points(2, 4)), 6);
    EXPECT_THROW(flatten({4, 0}, GridSpec::from_points(2, 4)), DomainError);
    EXPECT_THROW(flatten({-1}, GridSpec::from_points(1, 4)), DomainError);
    EXPECT_THROW(flatten({1}, GridSpec::from_points(2, 4)), DomainError);
}

TEST(grid, flatten_is_a_bijection) {
    for (auto g : {GridSpec::from_points(2, 4), GridSpec::from_points(3, 4), GridSpec::from_points(1, 32)}) {
        std::vector<std::int64_t> seen;
        for (std::int64_t i = 0; i < g.size(); ++i) {
            const auto j = unflatten(i, g);
            ASSERT_EQ(flatten(j, g), i);
            seen.push_back(flatten(j, g));
        }
        std::sort(seen.begin(), seen.end());
        for (std::int64_t i = 0; i < g.size(); ++i) ASSERT_EQ(seen[static_cast<std::size_t>(i)], i);
    }
}

TEST(grid, shift_examples) {
    const auto g4 = GridSpec::from_points(1, 4);
    EXPECT_TRUE(shift_operator({0}, g4).isIdentity());
    const auto s1 = shift_operator({1}, g4);
    EXPECT_EQ(s1(0, 3), 1.0);  // |3> -> |0>
    EXPECT_EQ(s1(1, 0), 1.0);

    const auto g8 = GridSpec::from_points(1, 8);
    const auto a = shift_operator({1}, g8);
    EXPECT_TRUE((a * shift_operator({-1}, g8)).isIdentity());
    DenseOperator p = DenseOperator::Identity(8, 8);
    for (int k = 0; k < 8; ++k) p = a * p;
    EXPECT_TRUE(p.isIdentity());
}

TEST(grid, shift_group_properties) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> off(-9, 9);
    const auto g = GridSpec::from_points(2, 4);
    for (int trial = 0; trial < 40; ++trial) {
        MultiIndex t{off(rng), off(rng)}, u{off(rng), off(rng)};
        const auto st = shift_operator(t, g);
        const auto su = shift_operator(u, g);
        // permutation matrix
        for (Eigen::Index r = 0; r < st.rows(); ++r) {
            ASSERT_EQ(st.row(r).sum(), 1.0);
            ASSERT_EQ(st.col(r).sum(), 1.0);
        }
        ASSERT_EQ(st.adjoint(), shift_operator({-t[0], -t[1]}, g));
        ASSERT_EQ(st * su, shift_operator({t[0] + u[0], t[1] + u[1]}, g));
        ASSERT_EQ(st * su, su * st);
        for (std::int64_t i = 0; i < g.size(); ++i) {
            StateVector e = StateVector::Unit(g.size(), i);
            const auto image = flatten(shifted(unflatten(i, g), t, g), g);
            ASSERT_EQ(st * e, StateVector::Unit(g.size(), image));
        }
    }
}

TEST(grid, aliasing_flag) {
    const auto g = GridSpec::from_points(1, 8);
    EXPECT_FALSE(offset_aliases({3}, g));
    EXPECT_TRUE(offset_aliases({4}, g));
    EXPECT_TRUE(offset_aliases({-4}, g));
    // reduced mod N internally
    EXPECT_EQ(shift_operator({9}, g), shift_operator({1}, g));
}

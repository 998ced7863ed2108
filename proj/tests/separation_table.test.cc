// Copyright 2026 The qfalab Authors
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

#include <sstream>

#include <gtest/gtest.h>

#include "qfalab/analysis.h"

using namespace qfalab;

TEST(SeparationTable, n8_ordering) {
    auto table = separation_table({8});
    ASSERT_EQ(table.rows.size(), 1u);
    const auto &row = table.rows[0];
    ASSERT_TRUE(row.rfa_tree.has_value());
    EXPECT_GT(*row.rfa_tree, row.dfa_built);
    EXPECT_GT(row.dfa_built, 5u);
    EXPECT_LE(row.dfa_min, row.dfa_built);
    EXPECT_EQ(row.dfa_min, row.nerode);
    EXPECT_EQ(row.verified_domain, "length <= 10");
}

TEST(SeparationTable, csv_shape_and_order) {
    SeparationOptions options;
    options.rfa_max_n = 6;
    auto table = separation_table({12, 4, 6}, options);
    auto csv = table.csv();
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,dfa_min,dfa_built,pfa_built,rfa_tree,nerode,epsilon");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("4,12,17,", 0), 0u) << line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("6,18,23,", 0), 0u) << line;
    std::getline(in, line);
    // No tree RFA above the cap: empty column.
    EXPECT_NE(line.find(",,36,0.2"), std::string::npos) << line;
    EXPECT_FALSE(std::getline(in, line));
}

TEST(SeparationTable, invariants_across_rows) {
    auto table = separation_table({4, 6, 10, 14});
    for (const auto &row : table.rows) {
        EXPECT_LE(row.dfa_min, row.dfa_built);
        EXPECT_EQ(row.dfa_min, row.nerode);
        EXPECT_EQ(row.dfa_min, 3 * row.n);
        EXPECT_EQ(row.rfa_tree.has_value(), row.n <= kTreeRfaMaxN);
    }
    EXPECT_EQ(table.rows.back().verified_domain, "length == 14");
}

TEST(SeparationTable, bad_n) {
    EXPECT_THROW(separation_table({5}), std::invalid_argument);
    EXPECT_THROW(separation_table({2}), std::invalid_argument);
}

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

#include <gtest/gtest.h>

#include "qfalab/analysis.h"

using namespace qfalab;

TEST(SerialEncoding, tree_rfa_n6_perfect) {
    auto result = serial_encoding_experiment(build_tree_rfa(6), 6);
    EXPECT_EQ(result.k, 3u);
    ASSERT_EQ(result.success.size(), 8u);
    std::size_t pairs = 0;
    for (const auto &row : result.success) {
        for (double p : row) {
            EXPECT_NEAR(p, 1.0, 1e-9);
            pairs++;
        }
    }
    EXPECT_EQ(pairs, 24u);
    EXPECT_NEAR(result.min_success, 1.0, 1e-9);
    EXPECT_LE(result.max_self_test_deviation, 1e-9);
}

TEST(SerialEncoding, every_small_tree) {
    for (std::size_t n : {2, 4, 8}) {
        auto result = serial_encoding_experiment(build_tree_rfa(n), n);
        EXPECT_NEAR(result.min_success, 1.0, 1e-9) << n;
        EXPECT_LE(result.max_self_test_deviation, 1e-9) << n;
    }
}

TEST(SerialEncoding, single_bit_is_membership_query) {
    // k = 1: decoding bit a_1 reads a_1 0 1^(n-2), which is in L_n iff a_1 = 0.
    auto rfa = build_tree_rfa(2);
    auto result = serial_encoding_experiment(rfa, 2);
    ASSERT_EQ(result.success.size(), 2u);
    EXPECT_EQ(result.success[0][0], run_qfa(rfa, rfa.alphabet.parse_word("00")).p_acc);
    EXPECT_EQ(result.success[1][0], run_qfa(rfa, rfa.alphabet.parse_word("10")).p_rej);
}

TEST(SerialEncoding, identity_machine_stores_nothing) {
    Qfa qfa{Alphabet::binary(), StatePartition{3, 0, {1}, {2}}, {}, kDefaultTolerance};
    qfa.unitaries.assign(4, SparseMatrix<Amplitude>::identity(3));
    auto result = serial_encoding_experiment(qfa, 4);
    EXPECT_LE(result.min_success, 0.5);
    EXPECT_LE(result.max_self_test_deviation, 1e-9);
}

TEST(SerialEncoding, encoding_word_layout) {
    auto a = Alphabet::binary();
    EXPECT_EQ(a.format_word(encoding_word(a, 3, 0b101)), "110111");
    EXPECT_EQ(a.format_word(encoding_word(a, 2, 0)), "0101");
}

TEST(SerialEncoding, errors) {
    auto rfa = build_tree_rfa(4);
    EXPECT_THROW(serial_encoding_experiment(rfa, 3), std::invalid_argument);
    Qfa unary{Alphabet::unary(), StatePartition{3, 0, {1}, {2}}, {}, kDefaultTolerance};
    unary.unitaries.assign(3, SparseMatrix<Amplitude>::identity(3));
    EXPECT_THROW(serial_encoding_experiment(unary, 2), std::invalid_argument);
    // The tree for n = 2 halts on the third letter, inside a k = 2 encoding word.
    EXPECT_THROW(serial_encoding_experiment(build_tree_rfa(2), 4), std::domain_error);
}

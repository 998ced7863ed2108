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

#include "qfalab/simulate.h"

#include <cmath>

#include <gtest/gtest.h>

#include "qfalab/constructions.h"
#include "random_automata.h"

using namespace qfalab;

namespace {

constexpr double kTol = 1e-9;

void expect_sums_to_one(const RunOutcome &o) {
    EXPECT_NEAR(o.p_acc + o.p_rej + o.p_non, 1.0, kTol);
    EXPECT_GE(o.p_acc, -kTol);
    EXPECT_GE(o.p_rej, -kTol);
    EXPECT_GE(o.p_non, -kTol);
}

/// One-letter PFA: the letter moves state 0 to accept or reject with 1/2 each.
Pfa fair_coin() {
    auto a = Alphabet::unary();
    Pfa pfa{a, StatePartition{3, 0, {1}, {2}}, {}, kDefaultTolerance};
    auto id = SparseMatrix<double>::identity(3);
    pfa.matrices = {SparseMatrix<double>::from_entries(3, {{0, 1, 0.5}, {0, 2, 0.5}, {1, 1, 1}, {2, 2, 1}}), id, id};
    return pfa;
}

}  // namespace

TEST(RunQfa, left_marker_to_accept) {
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    qfa.unitaries[qfa.alphabet.left().index] =
        SparseMatrix<Amplitude>::from_dense(3, std::vector<Amplitude>{0, 1, 0, 1, 0, 0, 0, 0, 1});
    auto o = run_qfa(qfa, qfa.alphabet.parse_word("0101"));
    EXPECT_EQ(o.p_acc, 1.0);
    EXPECT_EQ(o.halted_at, 0u);
    expect_sums_to_one(o);
}

TEST(RunQfa, tree_rfa_l4) {
    auto rfa = build_tree_rfa(4);
    auto a = rfa.alphabet;
    EXPECT_EQ(run_qfa(rfa, a.parse_word("0011")).p_acc, 1.0);
    EXPECT_EQ(run_qfa(rfa, a.parse_word("0101")).p_rej, 1.0);
}

TEST(RunQfa, identity_never_halts) {
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    auto o = run_qfa(qfa, qfa.alphabet.parse_word("011"));
    EXPECT_EQ(o.p_non, 1.0);
    EXPECT_FALSE(o.halted_at.has_value());
}

TEST(RunQfa, unknown_symbol_is_error) {
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    EXPECT_THROW(run_qfa(qfa, {qfa.alphabet.right()}), std::invalid_argument);
    EXPECT_THROW(run_qfa(qfa, {Symbol{9}}), std::invalid_argument);
}

TEST(RunQfa, rfa_outcomes_are_zero_one) {
    auto rfa = build_tree_rfa(4);
    for (std::size_t len = 0; len <= 6; len++) {
        for (const auto &w : words_of_length(rfa.alphabet, len)) {
            auto o = run_qfa(rfa, w);
            for (double v : {o.p_acc, o.p_rej, o.p_non}) {
                EXPECT_TRUE(v == 0.0 || v == 1.0);
            }
        }
    }
}

TEST(RunQfa, unitarity_preserves_norm_and_halting_is_monotone) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 30; k++) {
        auto qfa = fixtures::random_qfa(Alphabet::binary(), 6, rng);
        auto word = fixtures::random_word(qfa.alphabet, 8, rng);
        auto trace = trace_qfa(qfa, word);
        double halted = 0;
        for (const auto &step : trace.steps) {
            EXPECT_NEAR(step.norm_before, step.norm_after_apply, kTol);
            double next = halted + step.acc_mass + step.rej_mass;
            EXPECT_GE(next, halted);
            halted = next;
        }
        expect_sums_to_one(trace.outcome);
        auto direct = run_qfa(qfa, word);
        EXPECT_NEAR(direct.p_acc, trace.outcome.p_acc, 1e-12);
    }
}

TEST(RunPfa, random_outcomes_sum_to_one) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 30; k++) {
        auto pfa = fixtures::random_pfa(Alphabet::binary(), 5, rng);
        expect_sums_to_one(run_pfa(pfa, fixtures::random_word(pfa.alphabet, 10, rng)));
    }
}

TEST(RunPfa, dfa_embedding_matches_run_dfa) {
    auto dfa = build_dfa_contains00();
    auto pfa = embed_as_pfa(dfa);
    for (std::size_t len = 0; len <= 12; len++) {
        for (const auto &w : words_of_length(dfa.alphabet, len)) {
            auto o = run_pfa(pfa, w);
            auto v = run_dfa(dfa, w);
            EXPECT_EQ(o.p_acc, v == Verdict::Accept ? 1.0 : 0.0);
            EXPECT_EQ(o.p_rej, v == Verdict::Reject ? 1.0 : 0.0);
            EXPECT_EQ(o.p_non, v == Verdict::NoHalt ? 1.0 : 0.0);
            auto exact = run_exact(dfa, w);
            EXPECT_EQ(exact.p_acc, o.p_acc);
            EXPECT_EQ(exact.halted_at, o.halted_at);
        }
    }
}

TEST(RunPfa, freivalds_n20_accepts_target) {
    auto built = build_freivalds_pfa(20, 0.2);
    auto word = Word(20, built.pfa.alphabet.input_symbol("a"));
    EXPECT_GE(run_pfa(built.pfa, word).p_acc, 0.8);
}

TEST(RunPfa, pfa_ln_accepts_member) {
    auto built = build_pfa_Ln(6, 0.2);
    EXPECT_GE(run_pfa(built.pfa, built.pfa.alphabet.parse_word("110011")).p_acc, 0.8);
}

TEST(RunDfa, contains00_table_walks) {
    auto dfa = build_dfa_contains00();
    const auto &a = dfa.alphabet;
    EXPECT_EQ(run_dfa(dfa, a.parse_word("100")), Verdict::Accept);
    EXPECT_EQ(run_dfa(dfa, a.parse_word("0101")), Verdict::Reject);
    EXPECT_EQ(run_dfa(dfa, {}), Verdict::Reject);
    EXPECT_EQ(run_dfa(dfa, a.parse_word("00")), Verdict::Accept);
    EXPECT_STREQ(verdict_name(Verdict::Accept), "accept");
}

TEST(RunDfa, missing_transition_is_error) {
    auto dfa = build_dfa_contains00();
    dfa.transition[1][0].reset();
    EXPECT_THROW(run_dfa(dfa, dfa.alphabet.parse_word("00")), std::domain_error);
}

TEST(Sample, dfa_matches_verdict) {
    auto dfa = build_dfa_contains00();
    auto pfa = embed_as_pfa(dfa);
    for (const char *text : {"", "00", "0101", "1001"}) {
        auto w = dfa.alphabet.parse_word(text);
        for (std::uint64_t seed = 0; seed < 5; seed++) {
            EXPECT_EQ(sample_run(pfa, w, seed), run_dfa(dfa, w));
        }
    }
}

TEST(Sample, fair_coin_within_three_sigma) {
    const std::size_t n = 100000;
    auto summary = sample_many(fair_coin(), Word(1, Symbol{0}), n, 2024);
    EXPECT_EQ(summary.accepted + summary.rejected, n);
    EXPECT_NEAR(summary.acceptance_frequency(), 0.5, 3 * std::sqrt(0.25 / n));
}

TEST(Sample, freivalds_near_miss_within_three_sigma) {
    auto built = build_freivalds_pfa(20, 0.2);
    auto word = Word(19, built.pfa.alphabet.input_symbol("a"));
    const double p = run_pfa(built.pfa, word).p_acc;
    const std::size_t n = 100000;
    auto summary = sample_many(built.pfa, word, n, 99);
    EXPECT_NEAR(summary.acceptance_frequency(), p, 3 * std::sqrt(p * (1 - p) / n) + 1e-12);
}

TEST(Sample, qfa_frequency_tracks_exact) {
    std::mt19937_64 rng(3);
    auto qfa = fixtures::random_qfa(Alphabet::binary(), 4, rng);
    auto word = qfa.alphabet.parse_word("0110");
    const double p = run_qfa(qfa, word).p_acc;
    const std::size_t n = 100000;
    auto summary = sample_many(qfa, word, n, 17);
    EXPECT_NEAR(summary.acceptance_frequency(), p, 3 * std::sqrt(p * (1 - p) / n) + 1e-12);
}

TEST(Sample, same_seed_same_result) {
    std::mt19937_64 rng(8);
    AnyAutomaton qfa = fixtures::random_qfa(Alphabet::binary(), 4, rng);
    auto w = Alphabet::binary().parse_word("01");
    EXPECT_EQ(sample_many(qfa, w, 500, 1).accepted, sample_many(qfa, w, 500, 1).accepted);
}

TEST(RRestricted, identity_is_restricted) {
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    for (std::size_t r : {0, 1, 3, 5}) {
        EXPECT_TRUE(check_r_restricted(qfa, r, 6).restricted);
    }
}

TEST(RRestricted, halt_on_left_marker) {
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    qfa.unitaries[qfa.alphabet.left().index] =
        SparseMatrix<Amplitude>::from_dense(3, std::vector<Amplitude>{0, 1, 0, 1, 0, 0, 0, 0, 1});
    auto check = check_r_restricted(qfa, 2, 4);
    EXPECT_FALSE(check.restricted);
    EXPECT_TRUE(check.witness.empty());
    EXPECT_EQ(check.position, 0u);
    EXPECT_NEAR(check.halting_mass, 1.0, kTol);
}

TEST(RRestricted, tree_rfa_restricted_at_n) {
    for (std::size_t n : {2, 4, 6}) {
        EXPECT_TRUE(check_r_restricted(build_tree_rfa(n), n, n).restricted) << n;
    }
}

TEST(RRestricted, early_letter_halt_has_witness) {
    // Reading a 1 moves state 0 into the rejecting state 2.
    auto qfa = fixtures::identity_qfa(Alphabet::binary());
    qfa.unitaries[qfa.alphabet.input_symbol("1").index] =
        SparseMatrix<Amplitude>::from_dense(3, std::vector<Amplitude>{0, 0, 1, 0, 1, 0, 1, 0, 0});
    auto check = check_r_restricted(qfa, 3, 4);
    EXPECT_FALSE(check.restricted);
    ASSERT_FALSE(check.witness.empty());
    EXPECT_EQ(check.witness.back(), qfa.alphabet.input_symbol("1"));
    EXPECT_EQ(check.position, check.witness.size());
    EXPECT_LT(check.position, 3u);
    EXPECT_TRUE(check_r_restricted(qfa, 0, 4).restricted);
}

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

#include "qfalab/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "qfalab/analysis.h"
#include "qfalab/interchange.h"

using namespace qfalab;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = std::filesystem::temp_directory_path() /
               ("qfalab_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        std::filesystem::create_directories(dir_);
    }
    void TearDown() override {
        std::filesystem::remove_all(dir_);
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }

    std::filesystem::path dir_;
};

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

}  // namespace

TEST_F(CliTest, build_dfa00_five_states) {
    auto r = cli({"build", "dfa-00", "--out", path("d.json")});
    EXPECT_EQ(r.code, kExitOk) << r.err;
    EXPECT_NE(r.out.find("states: 5"), std::string::npos);
    EXPECT_NE(r.out.find("validation: ok"), std::string::npos);
    EXPECT_EQ(automaton_size(load_automaton(path("d.json"))), 5u);
}

TEST_F(CliTest, build_pfa_ln_count) {
    auto r = cli({"build", "pfa-ln", "--n", "6", "--epsilon", "0.2", "--out", path("p.json")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto built = build_pfa_Ln(6, 0.2);
    EXPECT_NE(r.out.find("states: " + std::to_string(3 * freivalds_counter_states(built.params) + 3)),
              std::string::npos);
}

TEST_F(CliTest, build_to_stdout_keeps_json_clean) {
    auto r = cli({"build", "dfa-ln", "--n", "4"});
    ASSERT_EQ(r.code, kExitOk);
    EXPECT_NO_THROW(parse_automaton(r.out));
    EXPECT_NE(r.err.find("states: 17"), std::string::npos);
}

TEST_F(CliTest, invalid_parameters_exit_2) {
    EXPECT_EQ(cli({"build", "rfa-tree", "--n", "12"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"build", "dfa-ln", "--n", "5"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"build", "pfa-ln", "--n", "6", "--epsilon", "0.7"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"build", "nfa"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"run", path("missing.json"), "01"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"table", "--n-list", "4,x"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"table", "--n-list", "3"}).code, kExitInvalidParams);
}

TEST_F(CliTest, run_matches_in_process_digits) {
    ASSERT_EQ(cli({"build", "pfa-ln", "--n", "4", "--out", path("p.json")}).code, kExitOk);
    auto r = cli({"run", path("p.json"), "1001"});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    auto built = build_pfa_Ln(4, 0.2);
    auto o = run_pfa(built.pfa, built.pfa.alphabet.parse_word("1001"));
    EXPECT_NE(r.out.find("p_acc: " + sci(o.p_acc)), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("p_rej: " + sci(o.p_rej)), std::string::npos);
    EXPECT_NE(r.out.find("p_non: " + sci(o.p_non)), std::string::npos);
}

TEST_F(CliTest, run_dfa_examples) {
    ASSERT_EQ(cli({"build", "dfa-00", "--out", path("d.json")}).code, kExitOk);
    EXPECT_NE(cli({"run", path("d.json"), "100"}).out.find("p_acc: 1.00000000000e+00"), std::string::npos);
    EXPECT_NE(cli({"run", path("d.json")}).out.find("p_rej: 1.00000000000e+00"), std::string::npos);
    EXPECT_EQ(cli({"run", path("d.json"), "012"}).code, kExitInvalidParams);
}

TEST_F(CliTest, verify_exit_codes) {
    ASSERT_EQ(cli({"build", "dfa-00", "--out", path("d.json")}).code, kExitOk);
    auto ok = cli({"verify", path("d.json"), "--predicate", "contains00", "--max-len", "10"});
    EXPECT_EQ(ok.code, kExitOk);
    EXPECT_NE(ok.out.find("verdict: recognized"), std::string::npos);
    auto bad = cli({"verify", path("d.json"), "--predicate", "ln", "--n", "4"});
    EXPECT_EQ(bad.code, kExitFailed);
    EXPECT_NE(bad.out.find("verdict: failed"), std::string::npos);
    EXPECT_EQ(cli({"verify", path("d.json"), "--predicate", "ln"}).code, kExitInvalidParams);
    EXPECT_EQ(cli({"verify", path("d.json"), "--predicate", "axn", "--n", "3"}).code, kExitInvalidParams);
}

TEST_F(CliTest, verify_unary_freivalds) {
    ASSERT_EQ(cli({"build", "pfa-freivalds", "--n", "10", "--out", path("f.json")}).code, kExitOk);
    auto r = cli({"verify", path("f.json"), "--predicate", "axn", "--n", "10", "--p", "0.8", "--max-len", "40"});
    EXPECT_EQ(r.code, kExitOk) << r.out << r.err;
}

TEST_F(CliTest, sample_with_and_without_seed) {
    ASSERT_EQ(cli({"build", "pfa-ln", "--n", "4", "--out", path("p.json")}).code, kExitOk);
    auto a = cli({"sample", path("p.json"), "1001", "--samples", "300", "--seed", "5"});
    auto b = cli({"sample", path("p.json"), "1001", "--samples", "300", "--seed", "5"});
    EXPECT_EQ(a.code, kExitOk);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("seed: 5\n"), std::string::npos);
    auto c = cli({"sample", path("p.json"), "1001", "--samples", "10"});
    EXPECT_EQ(c.code, kExitOk);
    EXPECT_NE(c.out.find("seed: "), std::string::npos);
}

TEST_F(CliTest, minimize_and_encode_test) {
    ASSERT_EQ(cli({"build", "dfa-ln", "--n", "6", "--out", path("l.json")}).code, kExitOk);
    auto m = cli({"minimize", path("l.json"), "--out", path("m.json")});
    EXPECT_EQ(m.code, kExitOk);
    EXPECT_NE(m.out.find("23 -> 18"), std::string::npos);
    EXPECT_EQ(cli({"encode-test", path("l.json"), "--n", "6"}).code, kExitInvalidParams);

    ASSERT_EQ(cli({"build", "rfa-tree", "--n", "6", "--out", path("r.json")}).code, kExitOk);
    auto e = cli({"encode-test", path("r.json"), "--n", "6"});
    EXPECT_EQ(e.code, kExitOk);
    EXPECT_NE(e.out.find("min_success: 1.00000000000e+00"), std::string::npos);
    EXPECT_EQ(cli({"encode-test", path("r.json"), "--n", "8"}).code, kExitFailed);
    EXPECT_EQ(cli({"minimize", path("r.json")}).code, kExitInvalidParams);
}

TEST_F(CliTest, table_csv) {
    auto r = cli({"table", "--n-list", "4,6", "--out", path("t.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::ifstream in(path("t.csv"));
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "n,dfa_min,dfa_built,pfa_built,rfa_tree,nerode,epsilon");
    auto direct = cli({"table", "--n-list", "4,6"});
    std::ostringstream file_text;
    file_text << std::ifstream(path("t.csv")).rdbuf();
    EXPECT_EQ(direct.out, file_text.str());
}

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

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "qfalab/analysis.h"
#include "qfalab/interchange.h"

namespace qfalab {

namespace {

/// Raised for parameter problems found after flag parsing.
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Raised when a freshly built automaton fails a check.
struct ConstructionFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

void require_even(std::size_t n, const char *what) {
    if (n < 2 || n % 2 != 0) {
        throw InvalidParams(std::string(what) + " needs an even --n >= 2, got " + std::to_string(n));
    }
}

void require_epsilon(double eps) {
    if (!(eps > 0 && eps < 0.5)) {
        throw InvalidParams("--epsilon must lie in (0, 0.5)");
    }
}

AnyAutomaton load_input(const std::string &path) {
    try {
        if (path == "-") {
            return read_automaton(std::cin);
        }
        return load_automaton(path);
    } catch (const std::exception &e) {
        throw InvalidParams(path + ": " + e.what());
    }
}

Word parse_input_word(const AnyAutomaton &automaton, const std::string &text) {
    try {
        return automaton_alphabet(automaton).parse_word(text);
    } catch (const std::exception &e) {
        throw InvalidParams(std::string("bad word: ") + e.what());
    }
}

void emit_automaton(const AnyAutomaton &automaton, const std::string &out_path, std::ostream &out) {
    if (out_path.empty() || out_path == "-") {
        write_automaton(out, automaton);
        out << "\n";
    } else {
        save_automaton(out_path, automaton);
    }
}

struct BuildOptions {
    std::string kind;
    std::size_t n = 0;
    double epsilon = 0.2;
    std::size_t bound = 0;
    std::string out;
};

AnyAutomaton build_kind(const BuildOptions &o, std::string &details) {
    if (o.kind == "dfa-00") {
        return build_dfa_contains00();
    } else if (o.kind == "dfa-ln") {
        require_even(o.n, "dfa-ln");
        return build_dfa_Ln(o.n);
    } else if (o.kind == "rfa-tree") {
        require_even(o.n, "rfa-tree");
        if (o.n > kTreeRfaMaxN) {
            throw InvalidParams("rfa-tree is capped at n <= " + std::to_string(kTreeRfaMaxN));
        }
        return build_tree_rfa(o.n);
    }
    if (o.kind == "pfa-freivalds" || o.kind == "pfa-ln") {
        if (o.kind == "pfa-ln") {
            require_even(o.n, "pfa-ln");
        } else if (o.n < 2) {
            throw InvalidParams("pfa-freivalds needs --n >= 2");
        }
        require_epsilon(o.epsilon);
        if (o.bound != 0 && o.bound < o.n) {
            throw InvalidParams("--bound must be at least --n");
        }
        FreivaldsParams params;
        std::optional<Pfa> pfa;
        try {
            if (o.kind == "pfa-ln") {
                auto built = build_pfa_Ln(o.n, o.epsilon, o.bound);
                params = built.params;
                pfa = std::move(built.pfa);
            } else {
                auto built = build_freivalds_pfa(o.n, o.epsilon, o.bound);
                params = built.params;
                pfa = std::move(built.pfa);
            }
        } catch (const std::runtime_error &e) {
            throw ConstructionFailure(e.what());
        }
        std::ostringstream d;
        d << "primes: " << params.primes.size() << " (" << params.primes.front() << ".." << params.primes.back()
          << "), counter states S = " << freivalds_counter_states(params) << "\n";
        d << "reject_const: " << params.reject_const << "\n";
        d << "p_acc on target: " << sci(params.accept_on_target) << "\n";
        d << "min p_rej off target (lengths <= " << params.length_bound << "): " << sci(params.min_reject_off_target)
          << "\n";
        details = d.str();
        return std::move(*pfa);
    }
    throw InvalidParams("unknown automaton kind '" + o.kind + "'");
}

int cmd_build(const BuildOptions &o, std::ostream &out, std::ostream &err) {
    std::string details;
    auto automaton = build_kind(o, details);
    auto report = validate(automaton);
    // Summary goes to stderr when the automaton itself is written to stdout.
    std::ostream &summary = (o.out.empty() || o.out == "-") ? err : out;
    summary << "model: " << model_name(automaton) << "\n";
    summary << "states: " << automaton_size(automaton) << "\n";
    summary << details;
    summary << "validation: " << (report.ok() ? "ok" : report.str()) << "\n";
    if (!report.ok()) {
        throw ConstructionFailure(o.kind + " failed validation");
    }
    if (auto *qfa = std::get_if<Qfa>(&automaton); qfa != nullptr && !is_rfa(*qfa)) {
        throw ConstructionFailure(o.kind + " is not a permutation automaton");
    }
    emit_automaton(automaton, o.out, out);
    return kExitOk;
}

int cmd_run(const std::string &file, const std::string &word_text, std::ostream &out) {
    auto automaton = load_input(file);
    auto word = parse_input_word(automaton, word_text);
    RunOutcome outcome;
    try {
        outcome = run_exact(automaton, word);
    } catch (const std::domain_error &e) {
        throw InvalidParams(e.what());
    }
    out << "p_acc: " << sci(outcome.p_acc) << "\n";
    out << "p_rej: " << sci(outcome.p_rej) << "\n";
    out << "p_non: " << sci(outcome.p_non) << "\n";
    if (outcome.halted_at.has_value()) {
        out << "halted_at: " << *outcome.halted_at << "\n";
    } else {
        out << "halted_at: none\n";
    }
    return kExitOk;
}

int cmd_sample(const std::string &file, const std::string &word_text, std::size_t samples,
               std::optional<std::uint64_t> seed, std::ostream &out) {
    auto automaton = load_input(file);
    auto word = parse_input_word(automaton, word_text);
    if (samples == 0) {
        throw InvalidParams("--samples must be positive");
    }
    std::uint64_t used = seed.has_value() ? *seed : (std::uint64_t{std::random_device{}()} << 32) ^ std::random_device{}();
    auto summary = sample_many(automaton, word, samples, used);
    auto exact = run_exact(automaton, word);
    out << "seed: " << used << "\n";
    out << "samples: " << summary.samples << "\n";
    out << "accepted: " << summary.accepted << "\n";
    out << "rejected: " << summary.rejected << "\n";
    out << "no_halt: " << summary.no_halt << "\n";
    out << "frequency: " << sci(summary.acceptance_frequency()) << "\n";
    out << "exact_p_acc: " << sci(exact.p_acc) << "\n";
    return kExitOk;
}

struct VerifyOptions {
    std::string file;
    std::string predicate;
    double p = 0;
    std::optional<std::size_t> max_len;
    std::optional<std::size_t> n;
    bool exact_length = false;
};

int cmd_verify(const VerifyOptions &o, std::ostream &out) {
    if (!(o.p > 0.5 && o.p <= 1)) {
        throw InvalidParams("--p must lie in (0.5, 1]");
    }
    auto automaton = load_input(o.file);
    const auto &alphabet = automaton_alphabet(automaton);
    WordPredicate predicate;
    std::string predicate_id = o.predicate;
    bool is_binary = alphabet.input_size() == 2 && alphabet.input_names()[0] == "0" && alphabet.input_names()[1] == "1";
    if (o.predicate == "contains00") {
        if (!is_binary) {
            throw InvalidParams("contains00 needs an automaton over {0,1}");
        }
        predicate = contains00_predicate(alphabet);
    } else if (o.predicate == "ln" || o.predicate == "axn") {
        if (!o.n.has_value()) {
            throw InvalidParams("--predicate " + o.predicate + " needs --n");
        }
        if (o.predicate == "ln") {
            if (!is_binary) {
                throw InvalidParams("ln needs an automaton over {0,1}");
            }
            require_even(*o.n, "ln");
            predicate = ln_predicate(alphabet, *o.n);
        } else {
            if (alphabet.input_size() != 1) {
                throw InvalidParams("axn needs a unary automaton");
            }
            predicate = length_predicate(*o.n);
        }
        predicate_id += "(n=" + std::to_string(*o.n) + ")";
    } else {
        throw InvalidParams("unknown predicate '" + o.predicate + "'");
    }

    std::size_t len = o.max_len.value_or(o.n.has_value() ? *o.n + 2 : 8);
    auto domain = o.exact_length ? WordDomain::exact_length(len) : WordDomain::up_to_length(len);
    if (domain_size(domain, alphabet) > kDefaultDomainCap) {
        throw InvalidParams("word domain (" + domain.describe() + ") exceeds " + std::to_string(kDefaultDomainCap) +
                            " words");
    }
    RecognitionReport report;
    try {
        report = verify_recognition(automaton, predicate, domain, o.p, o.file, predicate_id);
    } catch (const std::domain_error &e) {
        throw InvalidParams(e.what());
    }
    out << report.str(alphabet);
    return report.recognized ? kExitOk : kExitFailed;
}

int cmd_minimize(const std::string &file, const std::string &out_path, std::ostream &out, std::ostream &err) {
    auto automaton = load_input(file);
    const auto *dfa = std::get_if<Dfa>(&automaton);
    if (dfa == nullptr) {
        throw InvalidParams("minimize needs a DFA, got " + model_name(automaton));
    }
    std::optional<Dfa> minimized;
    try {
        minimized = minimize_dfa(*dfa);
    } catch (const std::invalid_argument &e) {
        throw InvalidParams(e.what());
    }
    const Dfa &minimal = *minimized;
    std::ostream &summary = (out_path.empty() || out_path == "-") ? err : out;
    summary << "states: " << dfa->size() << " -> " << minimal.size() << "\n";
    emit_automaton(minimal, out_path, out);
    return kExitOk;
}

int cmd_encode_test(const std::string &file, std::size_t n, double p, std::ostream &out) {
    auto automaton = load_input(file);
    const auto *qfa = std::get_if<Qfa>(&automaton);
    if (qfa == nullptr) {
        throw InvalidParams("encode-test needs a QFA, got " + model_name(automaton));
    }
    require_even(n, "encode-test");
    if (n / 2 > 20) {
        throw InvalidParams("encode-test enumerates 2^(n/2) encodings; --n must be <= 40");
    }
    EncodingExperimentResult result;
    try {
        result = serial_encoding_experiment(*qfa, n);
    } catch (const std::invalid_argument &e) {
        throw InvalidParams(e.what());
    } catch (const std::domain_error &e) {
        out << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    constexpr double kTolerance = 1e-9;
    out << "k: " << result.k << "\n";
    out << "min_success: " << sci(result.min_success) << "\n";
    out << "max_self_test_deviation: " << sci(result.max_self_test_deviation) << "\n";
    bool ok = result.min_success >= p - kTolerance && result.max_self_test_deviation <= kTolerance;
    out << "verdict: " << (ok ? "ok" : "failed") << "\n";
    return ok ? kExitOk : kExitFailed;
}

std::vector<std::size_t> parse_n_list(const std::string &text) {
    std::vector<std::size_t> values;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != item.size()) {
            throw InvalidParams("bad --n-list entry '" + item + "'");
        }
        if (v < 4 || v % 2 != 0) {
            throw InvalidParams("--n-list entries must be even and >= 4, got " + item);
        }
        if (v + kNerodePad > kNerodeHorizonCap) {
            throw InvalidParams("--n-list entries must be <= " + std::to_string(kNerodeHorizonCap - kNerodePad));
        }
        values.push_back(static_cast<std::size_t>(v));
    }
    if (values.empty()) {
        throw InvalidParams("--n-list is empty");
    }
    return values;
}

int cmd_table(const std::string &n_list, double epsilon, const std::string &out_path, std::ostream &out) {
    auto values = parse_n_list(n_list);
    require_epsilon(epsilon);
    SeparationOptions options;
    options.epsilon = epsilon;
    SeparationTable table;
    try {
        table = separation_table(values, options);
    } catch (const std::runtime_error &e) {
        throw ConstructionFailure(e.what());
    }
    if (out_path.empty() || out_path == "-") {
        table.write_csv(out);
    } else {
        std::ofstream file(out_path);
        if (!file) {
            throw InvalidParams("cannot open " + out_path);
        }
        table.write_csv(file);
        out << "wrote " << table.rows.size() << " rows to " << out_path << "\n";
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"qfalab: finite automata models (DFA, PFA, RFA, QFA) and their state-count separation"};
    app.require_subcommand(1);

    BuildOptions build;
    auto *build_cmd = app.add_subcommand("build", "Build an automaton and write it as interchange JSON");
    build_cmd->add_option("kind", build.kind, "dfa-00 | dfa-ln | rfa-tree | pfa-freivalds | pfa-ln")
        ->required()
        ->check(CLI::IsMember({"dfa-00", "dfa-ln", "rfa-tree", "pfa-freivalds", "pfa-ln"}));
    build_cmd->add_option("--n", build.n, "Target length");
    build_cmd->add_option("--epsilon", build.epsilon, "Error bound for the PFA builders")->capture_default_str();
    build_cmd->add_option("--bound", build.bound, "Largest input length the PFA must handle (default 4n)");
    build_cmd->add_option("--out", build.out, "Output file (stdout if omitted)");

    std::string file, word_text, out_path;
    auto *run_cmd = app.add_subcommand("run", "Exact acceptance statistics of one word");
    run_cmd->add_option("file", file, "Automaton JSON ('-' for stdin)")->required();
    run_cmd->add_option("word", word_text, "Input word (empty if omitted)");

    std::size_t samples = 10000;
    std::optional<std::uint64_t> seed;
    auto *sample_cmd = app.add_subcommand("sample", "Monte Carlo runs of one word");
    sample_cmd->add_option("file", file, "Automaton JSON")->required();
    sample_cmd->add_option("word", word_text, "Input word");
    sample_cmd->add_option("--samples", samples, "Number of trajectories")->capture_default_str();
    sample_cmd->add_option("--seed", seed, "RNG seed (drawn from entropy and printed if omitted)");

    VerifyOptions verify;
    verify.p = 1.0;
    auto *verify_cmd = app.add_subcommand("verify", "Exhaustive recognition check");
    verify_cmd->add_option("file", verify.file, "Automaton JSON")->required();
    verify_cmd->add_option("--predicate", verify.predicate, "ln | axn | contains00")
        ->required()
        ->check(CLI::IsMember({"ln", "axn", "contains00"}));
    verify_cmd->add_option("--p", verify.p, "Required probability")->capture_default_str();
    verify_cmd->add_option("--max-len", verify.max_len, "Check all words up to this length (default n+2, or 8)");
    verify_cmd->add_option("--n", verify.n, "Language parameter for ln / axn");
    verify_cmd->add_flag("--exact-length", verify.exact_length, "Check only words of length exactly --max-len");

    auto *minimize_cmd = app.add_subcommand("minimize", "Minimize a DFA");
    minimize_cmd->add_option("file", file, "DFA JSON")->required();
    minimize_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");

    std::size_t encode_n = 0;
    double encode_p = 1.0;
    auto *encode_cmd = app.add_subcommand("encode-test", "Serial encoding experiment on a QFA");
    encode_cmd->add_option("file", file, "QFA JSON")->required();
    encode_cmd->add_option("--n", encode_n, "Word length (k = n/2 bits)")->required();
    encode_cmd->add_option("--p", encode_p, "Required per-bit success probability")->capture_default_str();

    std::string n_list;
    double table_epsilon = 0.2;
    auto *table_cmd = app.add_subcommand("table", "State-count separation table as CSV");
    table_cmd->add_option("--n-list", n_list, "Comma-separated even n values")->required();
    table_cmd->add_option("--epsilon", table_epsilon, "PFA error bound")->capture_default_str();
    table_cmd->add_option("--out", out_path, "CSV file (stdout if omitted)");

    std::vector<std::string> argv_storage{"qfalab"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char *> argv;
    for (const auto &a : argv_storage) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return kExitInvalidParams;
    }

    try {
        if (*build_cmd) {
            return cmd_build(build, out, err);
        }
        if (*run_cmd) {
            return cmd_run(file, word_text, out);
        }
        if (*sample_cmd) {
            return cmd_sample(file, word_text, samples, seed, out);
        }
        if (*verify_cmd) {
            return cmd_verify(verify, out);
        }
        if (*minimize_cmd) {
            return cmd_minimize(file, out_path, out, err);
        }
        if (*encode_cmd) {
            return cmd_encode_test(file, encode_n, encode_p, out);
        }
        if (*table_cmd) {
            return cmd_table(n_list, table_epsilon, out_path, out);
        }
    } catch (const InvalidParams &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const ConstructionFailure &e) {
        err << "construction check failed: " << e.what() << "\n";
        return kExitConstruction;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const std::length_error &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalidParams;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitFailed;
    }
    return kExitInvalidParams;
}

}  // namespace qfalab

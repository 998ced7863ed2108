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

#ifndef QFALAB_ANALYSIS_H
#define QFALAB_ANALYSIS_H

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qfalab/automata.h"
#include "qfalab/constructions.h"
#include "qfalab/simulate.h"

namespace qfalab {

// ---------------------------------------------------------------------------
// Recognition sweeps

using WordPredicate = std::function<bool(const Word &)>;

/// Finite word sets for exhaustive checks.
struct WordDomain {
    enum class Kind { ExactLength, UpToLength };
    Kind kind = Kind::UpToLength;
    std::size_t length = 0;

    static WordDomain exact_length(std::size_t n) {
        return {Kind::ExactLength, n};
    }
    /// All words of length 0..max_len; over a unary alphabet this is a^0..a^max_len.
    static WordDomain up_to_length(std::size_t max_len) {
        return {Kind::UpToLength, max_len};
    }

    std::string describe() const;
};

inline constexpr std::size_t kDefaultDomainCap = std::size_t{1} << 20;

/// Number of words in the domain over the alphabet, saturating at SIZE_MAX.
std::size_t domain_size(const WordDomain &domain, const Alphabet &alphabet);

/// Enumerates the domain in length-then-lexicographic order. Throws
/// std::length_error when it holds more than `cap` words.
std::vector<Word> enumerate_domain(const WordDomain &domain, const Alphabet &alphabet,
                                   std::size_t cap = kDefaultDomainCap);

struct Margin {
    Word word;
    double probability = 0;
};

struct RecognitionReport {
    std::string automaton_id;
    std::string predicate_id;
    double threshold = 0;
    std::string domain;
    std::size_t words_checked = 0;
    /// Member with the smallest acceptance probability (none if no members).
    std::optional<Margin> min_acc_margin;
    /// Non-member with the smallest rejection probability.
    std::optional<Margin> min_rej_margin;
    bool recognized = false;

    std::string str(const Alphabet &alphabet) const;
};

/// Exact sweep: every member must be accepted and every non-member rejected
/// with probability at least p. Ties keep the first word in enumeration order.
RecognitionReport verify_recognition(const AnyAutomaton &automaton, const WordPredicate &predicate,
                                     const WordDomain &domain, double p, std::string automaton_id = "automaton",
                                     std::string predicate_id = "predicate", std::size_t cap = kDefaultDomainCap);

// Predicates for the languages studied here.
WordPredicate contains00_predicate(const Alphabet &alphabet);
/// Binary words of length exactly n containing "00".
WordPredicate ln_predicate(const Alphabet &alphabet, std::size_t n);
/// Words of length exactly n (the unary language {a^n} on a one-letter alphabet).
WordPredicate length_predicate(std::size_t n);

// ---------------------------------------------------------------------------
// DFA minimization and Myhill-Nerode counting

/// Quotient by language equivalence of the states reachable after ¢. Two
/// non-halting states are merged when every continuation w$ ends in the same
/// verdict (early halts included). Accepting and rejecting states stay
/// separate halting states; the result has one non-halting state per class
/// plus the halting states its $ moves need. The class of the ¢ target is the
/// initial state and ¢ is a self loop everywhere. Idempotent.
Dfa minimize_dfa(const Dfa &dfa);

/// Binary words are packed as (bits, length): the symbol at position i is bit i.
using BitPredicate = std::function<bool(std::uint64_t bits, std::size_t length)>;

struct Contains00Bits {
    bool operator()(std::uint64_t bits, std::size_t length) const {
        if (length < 2) {
            return false;
        }
        std::uint64_t zeros = ~bits & ((length == 64 ? 0 : (std::uint64_t{1} << length)) - 1);
        return (zeros & (zeros >> 1)) != 0;
    }
};

struct LnBits {
    std::size_t n;
    bool operator()(std::uint64_t bits, std::size_t length) const {
        return length == n && Contains00Bits{}(bits, length);
    }
};

struct NerodeCount {
    /// Classes of prefixes of length <= max_len, compared on all suffixes of
    /// length <= max_len + pad.
    std::size_t prefix_classes = 0;
    /// Verdicts that occur on some word of the explored domain (accept and/or
    /// reject); each needs its own halting state.
    std::size_t halting_outcomes = 0;

    /// Comparable to minimize_dfa(...).size().
    std::size_t total() const {
        return prefix_classes + halting_outcomes;
    }
};

inline constexpr std::size_t kNerodePad = 2;
/// Largest supported max_len + pad (suffix sets hold 2^(bound+1) words).
inline constexpr std::size_t kNerodeHorizonCap = 24;

/// Brute-force right-congruence count over {0,1}. Classes are discovered from
/// the empty prefix by extending one representative per class. Throws
/// std::length_error when max_len + pad exceeds kNerodeHorizonCap.
NerodeCount nerode_class_count(const BitPredicate &predicate, std::size_t max_len, std::size_t pad = kNerodePad);
NerodeCount nerode_class_count(Contains00Bits predicate, std::size_t max_len, std::size_t pad = kNerodePad);
NerodeCount nerode_class_count(LnBits predicate, std::size_t max_len, std::size_t pad = kNerodePad);

// ---------------------------------------------------------------------------
// Serial encoding experiment

struct EncodingExperimentResult {
    std::size_t k = 0;
    /// success[x][i]: probability that measurement i recovers bit i of x. Bit
    /// i of x (0-based, first encoded letter first) is (x >> (k - 1 - i)) & 1.
    std::vector<std::vector<double>> success;
    double min_success = 1;
    /// Largest amplitude difference between V_i |f(x)> and the state reached
    /// by running a_1 1 .. a_i 0 1^(n-2i) $ directly.
    double max_self_test_deviation = 0;
};

/// The encoding word a_1 1 a_2 1 .. a_k 1 for the bits of x.
Word encoding_word(const Alphabet &alphabet, std::size_t k, std::uint64_t x);

/// Encodes each x in {0,1}^k as the state after ¢ a_1 1 .. a_k 1 and decodes
/// bit i by undoing the tail with inverse unitaries, reading 0 1^(n-2i) $ and
/// measuring: accepting means 0, rejecting means 1. Throws std::invalid_argument
/// for an odd n or a non-binary alphabet, std::domain_error if the automaton
/// halts while reading an encoding word.
EncodingExperimentResult serial_encoding_experiment(const Qfa &qfa, std::size_t n);

// ---------------------------------------------------------------------------
// Separation table

struct SeparationRow {
    std::size_t n = 0;
    std::size_t dfa_min = 0;
    std::size_t dfa_built = 0;
    std::size_t pfa_built = 0;
    std::optional<std::size_t> rfa_tree;
    std::size_t nerode = 0;
    double epsilon = 0;
    /// Words covered by the recognition sweeps for this row.
    std::string verified_domain;
};

struct SeparationTable {
    std::vector<SeparationRow> rows;

    void write_csv(std::ostream &out) const;
    std::string csv() const;
};

struct SeparationOptions {
    double epsilon = 0.2;
    std::size_t rfa_max_n = kTreeRfaMaxN;
    /// Largest word count swept per automaton; rows beyond it fall back to
    /// words of length exactly n, then to no sweep.
    std::size_t verify_cap = std::size_t{1} << 15;
};

/// Builds, validates and checks every construction for each n (even, >= 4)
/// and records state counts. Throws std::runtime_error if a construction is
/// invalid or fails its recognition sweep.
SeparationTable separation_table(const std::vector<std::size_t> &n_values, const SeparationOptions &options = {});

}  // namespace qfalab

#endif

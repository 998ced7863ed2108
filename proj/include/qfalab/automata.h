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

#ifndef QFALAB_AUTOMATA_H
#define QFALAB_AUTOMATA_H

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qfalab/alphabet.h"
#include "qfalab/sparse_matrix.h"

namespace qfalab {

using StateId = std::size_t;

inline constexpr double kDefaultTolerance = 1e-9;

enum class HaltKind { NonHalting, Accepting, Rejecting };

/// Basis states split into accepting, rejecting and non-halting sets. The
/// non-halting set is everything not listed in `acc` or `rej`.
struct StatePartition {
    std::size_t n_states = 0;
    StateId initial = 0;
    std::vector<StateId> acc;
    std::vector<StateId> rej;

    /// Per-state classification. Out-of-range entries are ignored here; they
    /// are reported by validate().
    std::vector<HaltKind> kinds() const;
    std::vector<StateId> non_halting() const;

    friend bool operator==(const StatePartition &, const StatePartition &) = default;
};

/// Deterministic automaton. transition[state][working symbol] is empty only
/// where the machine never needs a move (halting states).
struct Dfa {
    Alphabet alphabet;
    StatePartition partition;
    std::vector<std::vector<std::optional<StateId>>> transition;

    std::size_t size() const {
        return partition.n_states;
    }
};

/// Probabilistic automaton with row-stochastic matrices: entry (i, j) of
/// matrices[σ] is the probability of moving from state i to state j.
struct Pfa {
    Alphabet alphabet;
    StatePartition partition;
    std::vector<SparseMatrix<double>> matrices;
    double tolerance = kDefaultTolerance;

    std::size_t size() const {
        return partition.n_states;
    }
};

/// Measure-many quantum automaton. unitaries[σ] acts on column vectors of
/// amplitudes: entry (i, j) is the amplitude sent from basis state j to i.
struct Qfa {
    Alphabet alphabet;
    StatePartition partition;
    std::vector<SparseMatrix<Amplitude>> unitaries;
    double tolerance = kDefaultTolerance;

    std::size_t size() const {
        return partition.n_states;
    }
};

using AnyAutomaton = std::variant<Dfa, Pfa, Qfa>;

struct Violation {
    std::string symbol;  // empty when the defect is not tied to a matrix
    std::optional<std::size_t> row;
    double defect = 0;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const {
        return violations.empty();
    }
    std::string str() const;
};

ValidationReport validate(const Dfa &dfa);
ValidationReport validate(const Pfa &pfa);
ValidationReport validate(const Qfa &qfa);
ValidationReport validate(const AnyAutomaton &automaton);

/// True iff every stored unitary entry is exactly 0 or 1.
bool is_rfa(const Qfa &qfa);

/// The 0/1 stochastic form of a DFA. Halting states with no outgoing move get
/// a self loop so every row stays stochastic.
Pfa embed_as_pfa(const Dfa &dfa);

/// Reads a 0/1 stochastic matrix set back as a DFA. Rows of halting states
/// that are pure self loops become empty transitions. Throws
/// std::invalid_argument when a row is not a single 1.
Dfa dfa_from_pfa(const Pfa &pfa);

/// A 0/1 unitary is a permutation; it is also a valid stochastic matrix
/// (transposed orientation). Used to cross-check RFAs against PFA runs.
Pfa permutation_qfa_as_pfa(const Qfa &qfa);

std::size_t automaton_size(const AnyAutomaton &automaton);
const Alphabet &automaton_alphabet(const AnyAutomaton &automaton);
std::string model_name(const AnyAutomaton &automaton);

}  // namespace qfalab

#endif

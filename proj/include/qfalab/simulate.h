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

#ifndef QFALAB_SIMULATE_H
#define QFALAB_SIMULATE_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "qfalab/automata.h"

namespace qfalab {

/// Halting mass below this is treated as no halt when reporting positions.
inline constexpr double kHaltEpsilon = 1e-12;

/// Measurement statistics of one run over ¢·word·$.
struct RunOutcome {
    double p_acc = 0;
    double p_rej = 0;
    double p_non = 0;
    /// Tape position (0 is ¢) of the first step whose cumulative halting mass
    /// exceeds kHaltEpsilon.
    std::optional<std::size_t> halted_at;
};

enum class Verdict { Accept, Reject, NoHalt };

const char *verdict_name(Verdict v);

/// Per-step bookkeeping of an exact run.
struct StepRecord {
    Symbol symbol;
    double norm_before = 0;        // mass (squared norm for QFAs) entering the step
    double norm_after_apply = 0;   // mass after the transformation, before measuring
    double acc_mass = 0;           // mass observed in the accepting subspace
    double rej_mass = 0;
};

struct RunTrace {
    std::vector<StepRecord> steps;
    RunOutcome outcome;
};

struct HaltingMass {
    double acc = 0;
    double rej = 0;
};

// Quantum state manipulation. Vectors are unnormalized: the squared norm is
// the probability of still running.
std::vector<Amplitude> initial_amplitudes(const Qfa &qfa);
std::vector<Amplitude> apply_unitary(const Qfa &qfa, Symbol symbol, std::span<const Amplitude> psi);
/// Applies U_σ^{-1} = U_σ^†.
std::vector<Amplitude> apply_inverse(const Qfa &qfa, Symbol symbol, std::span<const Amplitude> psi);
/// Measures against E_acc ⊕ E_rej ⊕ E_non, leaving only the non-halting
/// projection in `psi`.
HaltingMass measure(const std::vector<HaltKind> &kinds, std::vector<Amplitude> &psi);
double squared_norm(std::span<const Amplitude> psi);

/// Exact simulation. Throws std::invalid_argument if the word has symbols
/// outside the input alphabet.
RunOutcome run_qfa(const Qfa &qfa, const Word &word);
RunOutcome run_pfa(const Pfa &pfa, const Word &word);
Verdict run_dfa(const Dfa &dfa, const Word &word);

RunTrace trace_qfa(const Qfa &qfa, const Word &word);
RunTrace trace_pfa(const Pfa &pfa, const Word &word);

/// Exact outcome for any model; DFAs yield 0/1 probabilities.
RunOutcome run_exact(const AnyAutomaton &automaton, const Word &word);

/// One trajectory drawn from the model's measurement semantics.
Verdict sample_run(const Pfa &pfa, const Word &word, std::mt19937_64 &rng);
Verdict sample_run(const Qfa &qfa, const Word &word, std::mt19937_64 &rng);
Verdict sample_run(const Pfa &pfa, const Word &word, std::uint64_t seed);
Verdict sample_run(const Qfa &qfa, const Word &word, std::uint64_t seed);

struct SampleSummary {
    std::size_t samples = 0;
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t no_halt = 0;

    double acceptance_frequency() const {
        return samples == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(samples);
    }
};

/// Draws `samples` trajectories from one generator seeded with `seed`.
SampleSummary sample_many(const AnyAutomaton &automaton, const Word &word, std::size_t samples, std::uint64_t seed);

struct RestrictionCheck {
    bool restricted = true;
    Word witness;                 // prefix read when the early halt happened
    std::size_t position = 0;     // letters read at that point
    double halting_mass = 0;
};

/// Checks that no halting mass appears before r input letters have been read
/// (the right-marker step is exempt), over all words of length <= max_len.
RestrictionCheck check_r_restricted(const Qfa &qfa, std::size_t r, std::size_t max_len);

}  // namespace qfalab

#endif

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
#include <stdexcept>

namespace qfalab {

const char *verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Accept:
            return "accept";
        case Verdict::Reject:
            return "reject";
        default:
            return "no-halt";
    }
}

std::vector<Amplitude> initial_amplitudes(const Qfa &qfa) {
    std::vector<Amplitude> psi(qfa.size(), Amplitude{0});
    psi.at(qfa.partition.initial) = 1;
    return psi;
}

std::vector<Amplitude> apply_unitary(const Qfa &qfa, Symbol symbol, std::span<const Amplitude> psi) {
    return qfa.unitaries.at(symbol.index).multiply(psi);
}

std::vector<Amplitude> apply_inverse(const Qfa &qfa, Symbol symbol, std::span<const Amplitude> psi) {
    return qfa.unitaries.at(symbol.index).multiply_adjoint(psi);
}

double squared_norm(std::span<const Amplitude> psi) {
    double total = 0;
    for (const auto &a : psi) {
        total += std::norm(a);
    }
    return total;
}

HaltingMass measure(const std::vector<HaltKind> &kinds, std::vector<Amplitude> &psi) {
    HaltingMass mass;
    for (size_t q = 0; q < psi.size(); q++) {
        switch (kinds[q]) {
            case HaltKind::Accepting:
                mass.acc += std::norm(psi[q]);
                psi[q] = 0;
                break;
            case HaltKind::Rejecting:
                mass.rej += std::norm(psi[q]);
                psi[q] = 0;
                break;
            case HaltKind::NonHalting:
                break;
        }
    }
    return mass;
}

namespace {

void record_halt(RunOutcome &outcome, size_t position) {
    if (!outcome.halted_at.has_value() && outcome.p_acc + outcome.p_rej > kHaltEpsilon) {
        outcome.halted_at = position;
    }
}

double total(std::span<const double> v) {
    double t = 0;
    for (double x : v) {
        t += x;
    }
    return t;
}

}  // namespace

RunTrace trace_qfa(const Qfa &qfa, const Word &word) {
    auto tape = qfa.alphabet.tape(word);
    auto kinds = qfa.partition.kinds();
    RunTrace trace;
    auto psi = initial_amplitudes(qfa);
    for (size_t pos = 0; pos < tape.size(); pos++) {
        StepRecord step{tape[pos]};
        step.norm_before = squared_norm(psi);
        psi = apply_unitary(qfa, tape[pos], psi);
        step.norm_after_apply = squared_norm(psi);
        auto mass = measure(kinds, psi);
        step.acc_mass = mass.acc;
        step.rej_mass = mass.rej;
        trace.outcome.p_acc += mass.acc;
        trace.outcome.p_rej += mass.rej;
        record_halt(trace.outcome, pos);
        trace.steps.push_back(step);
    }
    trace.outcome.p_non = squared_norm(psi);
    return trace;
}

RunTrace trace_pfa(const Pfa &pfa, const Word &word) {
    auto tape = pfa.alphabet.tape(word);
    auto kinds = pfa.partition.kinds();
    RunTrace trace;
    std::vector<double> dist(pfa.size(), 0.0);
    dist.at(pfa.partition.initial) = 1;
    for (size_t pos = 0; pos < tape.size(); pos++) {
        StepRecord step{tape[pos]};
        step.norm_before = total(dist);
        dist = pfa.matrices.at(tape[pos].index).left_multiply(dist);
        step.norm_after_apply = total(dist);
        for (size_t q = 0; q < dist.size(); q++) {
            if (kinds[q] == HaltKind::Accepting) {
                step.acc_mass += dist[q];
                dist[q] = 0;
            } else if (kinds[q] == HaltKind::Rejecting) {
                step.rej_mass += dist[q];
                dist[q] = 0;
            }
        }
        trace.outcome.p_acc += step.acc_mass;
        trace.outcome.p_rej += step.rej_mass;
        record_halt(trace.outcome, pos);
        trace.steps.push_back(step);
    }
    trace.outcome.p_non = total(dist);
    return trace;
}

RunOutcome run_qfa(const Qfa &qfa, const Word &word) {
    auto tape = qfa.alphabet.tape(word);
    auto kinds = qfa.partition.kinds();
    RunOutcome outcome;
    auto psi = initial_amplitudes(qfa);
    for (size_t pos = 0; pos < tape.size(); pos++) {
        psi = apply_unitary(qfa, tape[pos], psi);
        auto mass = measure(kinds, psi);
        outcome.p_acc += mass.acc;
        outcome.p_rej += mass.rej;
        record_halt(outcome, pos);
    }
    outcome.p_non = squared_norm(psi);
    return outcome;
}

RunOutcome run_pfa(const Pfa &pfa, const Word &word) {
    return trace_pfa(pfa, word).outcome;
}

namespace {

struct DfaWalk {
    Verdict verdict = Verdict::NoHalt;
    std::optional<std::size_t> halted_at;
};

DfaWalk walk_dfa(const Dfa &dfa, const Word &word) {
    auto tape = dfa.alphabet.tape(word);
    auto kinds = dfa.partition.kinds();
    StateId q = dfa.partition.initial;
    for (size_t pos = 0; pos < tape.size(); pos++) {
        const auto &next = dfa.transition.at(q).at(tape[pos].index);
        if (!next.has_value()) {
            throw std::domain_error(
                "state " + std::to_string(q) + " has no transition on " + dfa.alphabet.name(tape[pos]));
        }
        q = *next;
        if (q >= dfa.size()) {
            throw std::domain_error("transition into nonexistent state " + std::to_string(q));
        }
        if (kinds[q] == HaltKind::Accepting) {
            return {Verdict::Accept, pos};
        }
        if (kinds[q] == HaltKind::Rejecting) {
            return {Verdict::Reject, pos};
        }
    }
    return {};
}

}  // namespace

Verdict run_dfa(const Dfa &dfa, const Word &word) {
    return walk_dfa(dfa, word).verdict;
}

RunOutcome run_exact(const AnyAutomaton &automaton, const Word &word) {
    if (const auto *dfa = std::get_if<Dfa>(&automaton)) {
        auto walk = walk_dfa(*dfa, word);
        RunOutcome out;
        out.p_acc = walk.verdict == Verdict::Accept ? 1 : 0;
        out.p_rej = walk.verdict == Verdict::Reject ? 1 : 0;
        out.p_non = walk.verdict == Verdict::NoHalt ? 1 : 0;
        out.halted_at = walk.halted_at;
        return out;
    }
    if (const auto *pfa = std::get_if<Pfa>(&automaton)) {
        return run_pfa(*pfa, word);
    }
    return run_qfa(std::get<Qfa>(automaton), word);
}

Verdict sample_run(const Pfa &pfa, const Word &word, std::mt19937_64 &rng) {
    auto tape = pfa.alphabet.tape(word);
    auto kinds = pfa.partition.kinds();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    StateId q = pfa.partition.initial;
    for (Symbol s : tape) {
        auto row = pfa.matrices.at(s.index).row(q);
        if (row.empty()) {
            throw std::domain_error("state " + std::to_string(q) + " has an empty row for " + pfa.alphabet.name(s));
        }
        double u = unit(rng);
        StateId next = row.back().col;
        for (const auto &cell : row) {
            if (u < cell.value) {
                next = cell.col;
                break;
            }
            u -= cell.value;
        }
        q = next;
        if (kinds[q] == HaltKind::Accepting) {
            return Verdict::Accept;
        }
        if (kinds[q] == HaltKind::Rejecting) {
            return Verdict::Reject;
        }
    }
    return Verdict::NoHalt;
}

Verdict sample_run(const Qfa &qfa, const Word &word, std::mt19937_64 &rng) {
    auto tape = qfa.alphabet.tape(word);
    auto kinds = qfa.partition.kinds();
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto psi = initial_amplitudes(qfa);
    for (Symbol s : tape) {
        psi = apply_unitary(qfa, s, psi);
        double norm = squared_norm(psi);
        auto mass = measure(kinds, psi);
        double u = unit(rng) * norm;
        if (u < mass.acc) {
            return Verdict::Accept;
        }
        if (u < mass.acc + mass.rej) {
            return Verdict::Reject;
        }
        // Collapse onto E_non.
        double remaining = squared_norm(psi);
        if (remaining <= 0) {
            // Only reachable through rounding when the halting mass is ~1.
            return mass.acc >= mass.rej ? Verdict::Accept : Verdict::Reject;
        }
        double scale = 1.0 / std::sqrt(remaining);
        for (auto &a : psi) {
            a *= scale;
        }
    }
    return Verdict::NoHalt;
}

Verdict sample_run(const Pfa &pfa, const Word &word, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_run(pfa, word, rng);
}

Verdict sample_run(const Qfa &qfa, const Word &word, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return sample_run(qfa, word, rng);
}

SampleSummary sample_many(const AnyAutomaton &automaton, const Word &word, std::size_t samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SampleSummary summary;
    summary.samples = samples;
    std::optional<Pfa> embedded;
    if (const auto *dfa = std::get_if<Dfa>(&automaton)) {
        embedded = embed_as_pfa(*dfa);
    }
    for (size_t k = 0; k < samples; k++) {
        Verdict v;
        if (embedded.has_value()) {
            v = sample_run(*embedded, word, rng);
        } else if (const auto *pfa = std::get_if<Pfa>(&automaton)) {
            v = sample_run(*pfa, word, rng);
        } else {
            v = sample_run(std::get<Qfa>(automaton), word, rng);
        }
        switch (v) {
            case Verdict::Accept:
                summary.accepted++;
                break;
            case Verdict::Reject:
                summary.rejected++;
                break;
            case Verdict::NoHalt:
                summary.no_halt++;
                break;
        }
    }
    return summary;
}

namespace {

struct RestrictionSearch {
    const Qfa &qfa;
    std::vector<HaltKind> kinds;
    std::size_t limit;
    RestrictionCheck result;
    Word prefix;

    bool visit(const std::vector<Amplitude> &psi) {
        if (prefix.size() >= limit) {
            return true;
        }
        for (std::uint32_t s = 0; s < qfa.alphabet.input_size(); s++) {
            prefix.push_back(Symbol{s});
            auto next = apply_unitary(qfa, Symbol{s}, psi);
            auto mass = measure(kinds, next);
            if (mass.acc + mass.rej > kHaltEpsilon) {
                result = {false, prefix, prefix.size(), mass.acc + mass.rej};
                return false;
            }
            if (!visit(next)) {
                return false;
            }
            prefix.pop_back();
        }
        return true;
    }
};

}  // namespace

RestrictionCheck check_r_restricted(const Qfa &qfa, std::size_t r, std::size_t max_len) {
    RestrictionCheck result;
    if (r == 0) {
        return result;
    }
    auto kinds = qfa.partition.kinds();
    auto psi = apply_unitary(qfa, qfa.alphabet.left(), initial_amplitudes(qfa));
    auto mass = measure(kinds, psi);
    if (mass.acc + mass.rej > kHaltEpsilon) {
        return {false, {}, 0, mass.acc + mass.rej};
    }
    // A halt after reading j letters is early when j < r.
    RestrictionSearch search{qfa, kinds, std::min(max_len, r - 1), {}, {}};
    search.visit(psi);
    return search.result;
}

}  // namespace qfalab

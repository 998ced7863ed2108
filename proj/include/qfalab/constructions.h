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

#ifndef QFALAB_CONSTRUCTIONS_H
#define QFALAB_CONSTRUCTIONS_H

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qfalab/automata.h"

namespace qfalab {

/// Five-state DFA for binary words containing "00". States: q0 = 0, q1 = 1,
/// q2 = 2, q_acc = 3, q_rej = 4; ¢ is the identity.
Dfa build_dfa_contains00();

/// Product of the contains-00 DFA with a length counter 0..n. Accepts binary
/// words of length exactly n containing "00". State (k, t) has index 3t + k;
/// q_acc = 3(n+1), q_rej = 3(n+1) + 1. Throws std::invalid_argument unless n
/// is even and >= 2.
Dfa build_dfa_Ln(std::size_t n);

inline constexpr std::size_t kTreeRfaMaxN = 10;

/// Reversible automaton that records the whole input in a binary prefix tree
/// of depth n. Every tree node v owns a halting twin h(v): $ swaps v with h(v),
/// so h(v) is accepting exactly when v is a leaf whose word is in L_n. Letters
/// beyond depth n send leaves to rejecting twins. Each map is completed to a
/// permutation by pairing leftover sources with leftover targets in index
/// order. State count 2 (2^(n+1) - 1).
///
/// Node for prefix b_1..b_l (bit b_1 most significant) has index 2^l - 1 +
/// value(b); its twin is that index plus 2^(n+1) - 1.
Qfa build_tree_rfa(std::size_t n, std::size_t max_n = kTreeRfaMaxN);

std::size_t tree_node_index(const Word &prefix);

struct FreivaldsParams {
    std::size_t n = 0;
    double epsilon = 0;
    std::vector<std::uint64_t> primes;
    double reject_const = 0;
    /// Lengths 0..length_bound other than n were checked at build time.
    std::size_t length_bound = 0;
    /// Largest number of primes p with N ≡ n (mod p) over N != n in range.
    std::size_t max_collisions = 0;
    double accept_on_target = 0;      // p_acc(a^n), closed form
    double min_reject_off_target = 0; // min over N != n in range of p_rej(a^N)
};

struct FreivaldsPfa {
    Pfa pfa;
    FreivaldsParams params;
};

/// Largest length multiple the default bound uses (bound = 4n).
inline constexpr std::size_t kFreivaldsBoundFactor = 4;

/// Unary prime-counting automaton for {a^n}. ¢ picks one of d counters
/// uniformly; counter p tracks the length mod p and, once per p letters
/// (entering residue 0), diverts to q_rej with probability min(1, c p / n);
/// $ accepts iff the residue equals n mod p.
///
/// Primes are the smallest d primes above log2(n), with d grown until every
/// N != n in [0, length_bound] agrees with n modulo at most eps d / 2 primes.
/// c balances p_acc(a^n) against the worst p_rej(a^N) in range. Throws
/// std::invalid_argument for n < 2 or eps outside (0, 1/2), and
/// std::runtime_error if no prime set or constant meets 1 - eps.
///
/// Layout: q_ini = 0, counter j residue r at offset_j + r (offsets start at
/// 1), then q_acc, q_rej.
FreivaldsPfa build_freivalds_pfa(std::size_t n, double epsilon, std::size_t length_bound = 0);

/// Closed-form acceptance probability of the Freivalds automaton on a^N.
double freivalds_accept_probability(const FreivaldsParams &params, std::size_t length);

/// Number of counter states (non-halting states other than q_ini).
std::size_t freivalds_counter_states(const FreivaldsParams &params);

/// Binary automaton for L_n: every counter state i of the Freivalds automaton
/// is split into copies (i, 0), (i, 1), (i, 2) that track the contains-00
/// progress while the counters keep measuring length. State count 3 S + 3
/// where S is the number of counter states.
///
/// Layout: q'_ini = 0, copy (i, k) at 1 + 3 (i - 1) + k for counter state i,
/// then q'_acc, q'_rej.
struct TripledPfa {
    Pfa pfa;
    FreivaldsParams params;
};
TripledPfa build_pfa_Ln(std::size_t n, double epsilon, std::size_t length_bound = 0);

/// Index of copy k of Freivalds state i (i >= 1) in the tripled automaton.
inline StateId tripled_index(StateId freivalds_state, std::size_t copy) {
    return 1 + 3 * (freivalds_state - 1) + copy;
}

}  // namespace qfalab

#endif

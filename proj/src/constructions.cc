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

#include <algorithm>
#include <stdexcept>

#include "qfalab/constructions.h"

namespace qfalab {

namespace {

// Progress toward "00": 0 = none (start or after a 1), 1 = one 0 pending, 2 = seen.
std::size_t contains00_step(std::size_t progress, std::uint32_t bit) {
    if (progress == 2) {
        return 2;
    }
    return bit == 0 ? progress + 1 : 0;
}

void require_even_n(std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and at least 2, got " + std::to_string(n));
    }
}

}  // namespace

Dfa build_dfa_contains00() {
    auto alphabet = Alphabet::binary();
    Dfa dfa{alphabet, StatePartition{5, 0, {3}, {4}}, {}};
    dfa.transition.assign(5, std::vector<std::optional<StateId>>(alphabet.working_size()));
    const auto zero = alphabet.input_symbol("0").index;
    const auto one = alphabet.input_symbol("1").index;
    const auto left = alphabet.left().index;
    const auto right = alphabet.right().index;
    for (StateId q = 0; q < 3; q++) {
        dfa.transition[q][zero] = contains00_step(q, 0);
        dfa.transition[q][one] = contains00_step(q, 1);
        dfa.transition[q][left] = q;
        dfa.transition[q][right] = q == 2 ? 3 : 4;
    }
    return dfa;
}

Dfa build_dfa_Ln(std::size_t n) {
    require_even_n(n);
    auto alphabet = Alphabet::binary();
    const std::size_t counters = 3 * (n + 1);
    const StateId acc = counters;
    const StateId rej = counters + 1;
    Dfa dfa{alphabet, StatePartition{counters + 2, 0, {acc}, {rej}}, {}};
    dfa.transition.assign(counters + 2, std::vector<std::optional<StateId>>(alphabet.working_size()));
    for (std::size_t t = 0; t <= n; t++) {
        for (std::size_t k = 0; k < 3; k++) {
            StateId q = 3 * t + k;
            auto &row = dfa.transition[q];
            for (std::uint32_t bit = 0; bit < 2; bit++) {
                row[alphabet.input_symbol(bit == 0 ? "0" : "1").index] =
                    t < n ? 3 * (t + 1) + contains00_step(k, bit) : rej;
            }
            row[alphabet.left().index] = q;
            row[alphabet.right().index] = (t == n && k == 2) ? acc : rej;
        }
    }
    return dfa;
}

std::size_t tree_node_index(const Word &prefix) {
    std::size_t value = 0;
    for (Symbol s : prefix) {
        value = 2 * value + s.index;
    }
    return ((std::size_t{1} << prefix.size()) - 1) + value;
}

namespace {

/// Completes an injective partial map to a permutation by pairing unmapped
/// sources with unused targets, both in increasing index order.
std::vector<StateId> complete_permutation(std::vector<std::optional<StateId>> partial) {
    const std::size_t n = partial.size();
    std::vector<bool> used(n, false);
    for (const auto &t : partial) {
        if (t.has_value()) {
            if (used.at(*t)) {
                throw std::logic_error("partial map is not injective");
            }
            used[*t] = true;
        }
    }
    std::vector<StateId> free_targets;
    for (StateId q = 0; q < n; q++) {
        if (!used[q]) {
            free_targets.push_back(q);
        }
    }
    std::vector<StateId> out(n);
    std::size_t next = 0;
    for (StateId q = 0; q < n; q++) {
        out[q] = partial[q].has_value() ? *partial[q] : free_targets[next++];
    }
    return out;
}

SparseMatrix<Amplitude> permutation_unitary(const std::vector<StateId> &image) {
    std::vector<MatrixEntry<Amplitude>> entries;
    for (StateId q = 0; q < image.size(); q++) {
        // Column q carries basis state q to image[q].
        entries.push_back({image[q], q, Amplitude{1}});
    }
    return SparseMatrix<Amplitude>::from_entries(image.size(), std::move(entries));
}

}  // namespace

Qfa build_tree_rfa(std::size_t n, std::size_t max_n) {
    require_even_n(n);
    if (n > max_n) {
        throw std::invalid_argument(
            "tree RFA for n = " + std::to_string(n) + " exceeds the cap of " + std::to_string(max_n));
    }
    auto alphabet = Alphabet::binary();
    const std::size_t nodes = (std::size_t{1} << (n + 1)) - 1;
    const std::size_t first_leaf = (std::size_t{1} << n) - 1;
    const std::size_t total = 2 * nodes;
    auto twin = [&](StateId v) { return v + nodes; };

    StatePartition partition{total, 0, {}, {}};
    std::vector<StateId> rejecting_twins;
    for (StateId v = 0; v < nodes; v++) {
        bool accepting = false;
        if (v >= first_leaf) {
            // Leaf value bits, most significant first, spell the word.
            std::size_t value = v - first_leaf;
            std::size_t progress = 0;
            for (std::size_t pos = n; pos-- > 0;) {
                progress = contains00_step(progress, static_cast<std::uint32_t>((value >> pos) & 1));
            }
            accepting = progress == 2;
        }
        if (accepting) {
            partition.acc.push_back(twin(v));
        } else {
            partition.rej.push_back(twin(v));
            rejecting_twins.push_back(twin(v));
        }
    }

    Qfa qfa{alphabet, partition, std::vector<SparseMatrix<Amplitude>>(alphabet.working_size()), kDefaultTolerance};
    qfa.unitaries[alphabet.left().index] = SparseMatrix<Amplitude>::identity(total);

    std::vector<std::optional<StateId>> end_map(total);
    for (StateId v = 0; v < nodes; v++) {
        end_map[v] = twin(v);
        end_map[twin(v)] = v;
    }
    qfa.unitaries[alphabet.right().index] = permutation_unitary(complete_permutation(std::move(end_map)));

    for (std::uint32_t bit = 0; bit < 2; bit++) {
        std::vector<std::optional<StateId>> letter_map(total);
        for (std::size_t depth = 0, start = 0; depth < n; depth++, start = 2 * start + 1) {
            for (std::size_t value = 0; value < (std::size_t{1} << depth); value++) {
                letter_map[start + value] = (2 * start + 1) + 2 * value + bit;
            }
        }
        for (std::size_t leaf = 0; leaf < (std::size_t{1} << n); leaf++) {
            letter_map[first_leaf + leaf] = rejecting_twins.at(leaf);
        }
        qfa.unitaries[alphabet.input_symbol(bit == 0 ? "0" : "1").index] =
            permutation_unitary(complete_permutation(std::move(letter_map)));
    }
    return qfa;
}

TripledPfa build_pfa_Ln(std::size_t n, double epsilon, std::size_t length_bound) {
    require_even_n(n);
    auto base = build_freivalds_pfa(n, epsilon, length_bound);
    const auto &q = base.pfa;
    const std::size_t counters = freivalds_counter_states(base.params);
    const StateId base_acc = counters + 1;
    const StateId base_rej = counters + 2;
    const StateId ini = 0;
    const StateId acc = 1 + 3 * counters;
    const StateId rej = acc + 1;
    auto is_counter = [&](StateId i) { return i >= 1 && i <= counters; };
    auto halting_image = [&](StateId i) { return i == base_acc ? acc : rej; };

    auto alphabet = Alphabet::binary();
    const Symbol letter = q.alphabet.input_symbol("a");
    TripledPfa out{
        Pfa{alphabet, StatePartition{3 * counters + 3, ini, {acc}, {rej}}, {}, kDefaultTolerance}, base.params};

    for (std::size_t s = 0; s < alphabet.working_size(); s++) {
        const Symbol target_symbol{static_cast<std::uint32_t>(s)};
        std::vector<MatrixEntry<double>> entries;
        if (alphabet.is_input(target_symbol)) {
            const std::uint32_t bit = alphabet.name(target_symbol) == "0" ? 0 : 1;
            const auto &m = q.matrices[letter.index];
            for (StateId i = 0; i < m.dim(); i++) {
                for (const auto &cell : m.row(i)) {
                    const StateId j = cell.col;
                    const double p = cell.value;
                    if (is_counter(i) && is_counter(j)) {
                        // Copies follow the contains-00 progress while i -> j counts length.
                        for (std::size_t k = 0; k < 3; k++) {
                            entries.push_back({tripled_index(i, k), tripled_index(j, contains00_step(k, bit)), p});
                        }
                    } else if (is_counter(i) && j == base_rej) {
                        for (std::size_t k = 0; k < 3; k++) {
                            entries.push_back({tripled_index(i, k), rej, p});
                        }
                    } else if (i == ini && j == ini) {
                        entries.push_back({ini, ini, p});
                    } else if (!is_counter(i) && i != ini) {
                        entries.push_back({halting_image(i), halting_image(i), p});
                    } else {
                        throw std::logic_error("unexpected letter transition in the counting automaton");
                    }
                }
            }
        } else if (target_symbol == alphabet.left()) {
            const auto &m = q.matrices[q.alphabet.left().index];
            for (StateId i = 0; i < m.dim(); i++) {
                for (const auto &cell : m.row(i)) {
                    const StateId j = cell.col;
                    if (i == ini && is_counter(j)) {
                        entries.push_back({ini, tripled_index(j, 0), cell.value});
                    } else if (is_counter(i) && is_counter(j)) {
                        for (std::size_t k = 0; k < 3; k++) {
                            entries.push_back({tripled_index(i, k), tripled_index(j, k), cell.value});
                        }
                    } else if (!is_counter(i) && i != ini && i == j) {
                        entries.push_back({halting_image(i), halting_image(i), cell.value});
                    } else {
                        throw std::logic_error("unexpected left-marker transition in the counting automaton");
                    }
                }
            }
        } else {
            const auto &m = q.matrices[q.alphabet.right().index];
            for (StateId i = 0; i < m.dim(); i++) {
                for (const auto &cell : m.row(i)) {
                    const StateId j = cell.col;
                    const double p = cell.value;
                    if (is_counter(i) && j == base_rej) {
                        for (std::size_t k = 0; k < 3; k++) {
                            entries.push_back({tripled_index(i, k), rej, p});
                        }
                    } else if (is_counter(i) && j == base_acc) {
                        entries.push_back({tripled_index(i, 2), acc, p});
                        entries.push_back({tripled_index(i, 0), rej, p});
                        entries.push_back({tripled_index(i, 1), rej, p});
                    } else if (i == ini && j == base_rej) {
                        entries.push_back({ini, rej, p});
                    } else if (!is_counter(i) && i != ini && i == j) {
                        entries.push_back({halting_image(i), halting_image(i), p});
                    } else {
                        throw std::logic_error("unexpected right-marker transition in the counting automaton");
                    }
                }
            }
        }
        out.pfa.matrices.push_back(SparseMatrix<double>::from_entries(out.pfa.size(), std::move(entries)));
    }
    return out;
}

}  // namespace qfalab

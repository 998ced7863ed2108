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

#ifndef QFALAB_TESTS_RANDOM_AUTOMATA_H
#define QFALAB_TESTS_RANDOM_AUTOMATA_H

#include <random>
#include <vector>

#include "qfalab/automata.h"

namespace qfalab::fixtures {

/// Random partition: state 0 is initial and non-halting, every other state is
/// non-halting, accepting or rejecting with equal odds.
inline StatePartition random_partition(std::size_t n, std::mt19937_64 &rng) {
    StatePartition partition{n, 0, {}, {}};
    std::uniform_int_distribution<int> kind(0, 2);
    for (StateId q = 1; q < n; q++) {
        switch (kind(rng)) {
            case 1:
                partition.acc.push_back(q);
                break;
            case 2:
                partition.rej.push_back(q);
                break;
            default:
                break;
        }
    }
    return partition;
}

inline Pfa random_pfa(const Alphabet &alphabet, std::size_t n, std::mt19937_64 &rng) {
    Pfa pfa{alphabet, random_partition(n, rng), {}, kDefaultTolerance};
    std::exponential_distribution<double> weight(1.0);
    std::bernoulli_distribution keep(0.6);
    for (std::size_t s = 0; s < alphabet.working_size(); s++) {
        std::vector<double> dense(n * n, 0.0);
        for (std::size_t i = 0; i < n; i++) {
            double total = 0;
            for (std::size_t j = 0; j < n; j++) {
                if (keep(rng)) {
                    dense[i * n + j] = weight(rng);
                    total += dense[i * n + j];
                }
            }
            if (total == 0) {
                dense[i * n + i] = total = 1;
            }
            for (std::size_t j = 0; j < n; j++) {
                dense[i * n + j] /= total;
            }
        }
        pfa.matrices.push_back(SparseMatrix<double>::from_dense(n, dense));
    }
    return pfa;
}

/// Haar-like random unitary from Gram-Schmidt on complex Gaussian columns.
inline SparseMatrix<Amplitude> random_unitary(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<std::vector<Amplitude>> cols(n, std::vector<Amplitude>(n));
    for (std::size_t c = 0; c < n; c++) {
        for (auto &v : cols[c]) {
            v = {gauss(rng), gauss(rng)};
        }
        for (std::size_t prev = 0; prev < c; prev++) {
            Amplitude dot = 0;
            for (std::size_t r = 0; r < n; r++) {
                dot += std::conj(cols[prev][r]) * cols[c][r];
            }
            for (std::size_t r = 0; r < n; r++) {
                cols[c][r] -= dot * cols[prev][r];
            }
        }
        double norm = 0;
        for (const auto &v : cols[c]) {
            norm += std::norm(v);
        }
        norm = std::sqrt(norm);
        for (auto &v : cols[c]) {
            v /= norm;
        }
    }
    std::vector<Amplitude> dense(n * n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            dense[r * n + c] = cols[c][r];
        }
    }
    return SparseMatrix<Amplitude>::from_dense(n, dense);
}

inline Qfa random_qfa(const Alphabet &alphabet, std::size_t n, std::mt19937_64 &rng) {
    Qfa qfa{alphabet, random_partition(n, rng), {}, kDefaultTolerance};
    for (std::size_t s = 0; s < alphabet.working_size(); s++) {
        qfa.unitaries.push_back(random_unitary(n, rng));
    }
    return qfa;
}

inline Word random_word(const Alphabet &alphabet, std::size_t max_len, std::mt19937_64 &rng) {
    std::uniform_int_distribution<std::size_t> len(0, max_len);
    std::uniform_int_distribution<std::uint32_t> letter(0, static_cast<std::uint32_t>(alphabet.input_size() - 1));
    Word w(len(rng));
    for (auto &s : w) {
        s = Symbol{letter(rng)};
    }
    return w;
}

/// Identity on every symbol; state 0 initial, state 1 accepting, state 2 rejecting.
inline Qfa identity_qfa(const Alphabet &alphabet, std::size_t n = 3) {
    Qfa qfa{alphabet, StatePartition{n, 0, {1}, {2}}, {}, kDefaultTolerance};
    qfa.unitaries.assign(alphabet.working_size(), SparseMatrix<Amplitude>::identity(n));
    return qfa;
}

}  // namespace qfalab::fixtures

#endif

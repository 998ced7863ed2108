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
#include <cmath>
#include <stdexcept>

#include "qfalab/analysis.h"

namespace qfalab {

namespace {

double projected_mass(const std::vector<HaltKind> &kinds, const std::vector<Amplitude> &psi, HaltKind kind) {
    double total = 0;
    for (std::size_t q = 0; q < psi.size(); q++) {
        if (kinds[q] == kind) {
            total += std::norm(psi[q]);
        }
    }
    return total;
}

/// Runs ¢ then `letters`, measuring after each step. Throws if any halting
/// mass shows up.
std::vector<Amplitude> read_without_halting(const Qfa &qfa, const std::vector<HaltKind> &kinds, const Word &letters) {
    auto psi = initial_amplitudes(qfa);
    auto step = [&](Symbol s, std::size_t position) {
        psi = apply_unitary(qfa, s, psi);
        auto halted = measure(kinds, psi);
        if (halted.acc + halted.rej > kHaltEpsilon) {
            throw std::domain_error("automaton halts at tape position " + std::to_string(position) +
                                    " while reading the encoding word " + qfa.alphabet.format_word(letters));
        }
    };
    step(qfa.alphabet.left(), 0);
    for (std::size_t k = 0; k < letters.size(); k++) {
        step(letters[k], k + 1);
    }
    return psi;
}

}  // namespace

Word encoding_word(const Alphabet &alphabet, std::size_t k, std::uint64_t x) {
    const Symbol zero = alphabet.input_symbol("0");
    const Symbol one = alphabet.input_symbol("1");
    Word w;
    w.reserve(2 * k);
    for (std::size_t i = 0; i < k; i++) {
        w.push_back(((x >> (k - 1 - i)) & 1) ? one : zero);
        w.push_back(one);
    }
    return w;
}

EncodingExperimentResult serial_encoding_experiment(const Qfa &qfa, std::size_t n) {
    if (n < 2 || n % 2 != 0) {
        throw std::invalid_argument("n must be even and at least 2, got " + std::to_string(n));
    }
    const auto &alphabet = qfa.alphabet;
    const auto &names = alphabet.input_names();
    if (names.size() != 2 || std::find(names.begin(), names.end(), "0") == names.end() ||
        std::find(names.begin(), names.end(), "1") == names.end()) {
        throw std::invalid_argument("serial encoding needs the alphabet {0,1}");
    }
    if (n / 2 >= 63) {
        throw std::invalid_argument("k = n/2 must stay below 63");
    }
    auto report = validate(qfa);
    if (!report.ok()) {
        throw std::invalid_argument("invalid QFA: " + report.str());
    }
    const auto kinds = qfa.partition.kinds();
    const Symbol zero = alphabet.input_symbol("0");
    const Symbol one = alphabet.input_symbol("1");

    EncodingExperimentResult result;
    result.k = n / 2;
    const std::size_t k = result.k;
    result.success.assign(std::size_t{1} << k, std::vector<double>(k, 0.0));
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << k); x++) {
        const Word word = encoding_word(alphabet, k, x);
        const auto encoded = read_without_halting(qfa, kinds, word);
        for (std::size_t i = 1; i <= k; i++) {
            // Undo y = 1 a_{i+1} 1 .. a_k 1, the letters after a_i.
            auto psi = encoded;
            for (std::size_t pos = word.size(); pos-- > 2 * i - 1;) {
                psi = apply_inverse(qfa, word[pos], psi);
            }
            psi = apply_unitary(qfa, zero, psi);
            for (std::size_t r = 0; r < n - 2 * i; r++) {
                psi = apply_unitary(qfa, one, psi);
            }
            psi = apply_unitary(qfa, alphabet.right(), psi);

            const bool bit = (x >> (k - i)) & 1;
            const double p =
                projected_mass(kinds, psi, bit ? HaltKind::Rejecting : HaltKind::Accepting);
            result.success[x][i - 1] = std::clamp(p, 0.0, 1.0);
            result.min_success = std::min(result.min_success, result.success[x][i - 1]);

            // Same decoding word read from scratch with measurements in between.
            Word direct(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(2 * i - 1));
            direct.push_back(zero);
            direct.insert(direct.end(), n - 2 * i, one);
            auto ref = initial_amplitudes(qfa);
            ref = apply_unitary(qfa, alphabet.left(), ref);
            measure(kinds, ref);
            for (Symbol s : direct) {
                ref = apply_unitary(qfa, s, ref);
                measure(kinds, ref);
            }
            ref = apply_unitary(qfa, alphabet.right(), ref);
            for (std::size_t q = 0; q < ref.size(); q++) {
                result.max_self_test_deviation = std::max(result.max_self_test_deviation, std::abs(ref[q] - psi[q]));
            }
        }
    }
    return result;
}

}  // namespace qfalab

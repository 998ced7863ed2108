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

#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qfalab/analysis.h"

namespace qfalab {

std::string WordDomain::describe() const {
    return (kind == Kind::ExactLength ? "length == " : "length <= ") + std::to_string(length);
}

std::size_t domain_size(const WordDomain &domain, const Alphabet &alphabet) {
    constexpr auto kMax = std::numeric_limits<std::size_t>::max();
    const std::size_t k = alphabet.input_size();
    std::size_t layer = 1;  // words of the current length
    std::size_t total = domain.kind == WordDomain::Kind::UpToLength ? 1 : 0;
    for (std::size_t len = 1; len <= domain.length; len++) {
        if (layer > kMax / k) {
            return kMax;
        }
        layer *= k;
        if (domain.kind == WordDomain::Kind::UpToLength) {
            if (total > kMax - layer) {
                return kMax;
            }
            total += layer;
        }
    }
    return domain.kind == WordDomain::Kind::ExactLength ? layer : total;
}

std::vector<Word> enumerate_domain(const WordDomain &domain, const Alphabet &alphabet, std::size_t cap) {
    std::size_t size = domain_size(domain, alphabet);
    if (size > cap) {
        throw std::length_error(
            "word domain (" + domain.describe() + ") has more than " + std::to_string(cap) + " words");
    }
    if (domain.kind == WordDomain::Kind::ExactLength) {
        return words_of_length(alphabet, domain.length);
    }
    std::vector<Word> out;
    out.reserve(size);
    for (std::size_t len = 0; len <= domain.length; len++) {
        auto layer = words_of_length(alphabet, len);
        out.insert(out.end(), std::make_move_iterator(layer.begin()), std::make_move_iterator(layer.end()));
    }
    return out;
}

std::string RecognitionReport::str(const Alphabet &alphabet) const {
    std::ostringstream out;
    char buf[64];
    auto fmt = [&](double v) {
        std::snprintf(buf, sizeof(buf), "%.11e", v);
        return std::string(buf);
    };
    auto word_text = [&](const Word &w) { return w.empty() ? std::string("(empty)") : alphabet.format_word(w); };
    out << "automaton: " << automaton_id << "\n";
    out << "predicate: " << predicate_id << "\n";
    out << "threshold: " << fmt(threshold) << "\n";
    out << "domain: " << domain << " (" << words_checked << " words)\n";
    if (min_acc_margin.has_value()) {
        out << "min_acc: " << fmt(min_acc_margin->probability) << " on " << word_text(min_acc_margin->word) << "\n";
    } else {
        out << "min_acc: none (no members in domain)\n";
    }
    if (min_rej_margin.has_value()) {
        out << "min_rej: " << fmt(min_rej_margin->probability) << " on " << word_text(min_rej_margin->word) << "\n";
    } else {
        out << "min_rej: none (no non-members in domain)\n";
    }
    out << "verdict: " << (recognized ? "recognized" : "failed") << "\n";
    return out.str();
}

RecognitionReport verify_recognition(const AnyAutomaton &automaton, const WordPredicate &predicate,
                                     const WordDomain &domain, double p, std::string automaton_id,
                                     std::string predicate_id, std::size_t cap) {
    const auto &alphabet = automaton_alphabet(automaton);
    auto words = enumerate_domain(domain, alphabet, cap);
    RecognitionReport report;
    report.automaton_id = std::move(automaton_id);
    report.predicate_id = std::move(predicate_id);
    report.threshold = p;
    report.domain = domain.describe();
    report.words_checked = words.size();
    for (auto &word : words) {
        auto outcome = run_exact(automaton, word);
        if (predicate(word)) {
            if (!report.min_acc_margin.has_value() || outcome.p_acc < report.min_acc_margin->probability) {
                report.min_acc_margin = Margin{word, outcome.p_acc};
            }
        } else {
            if (!report.min_rej_margin.has_value() || outcome.p_rej < report.min_rej_margin->probability) {
                report.min_rej_margin = Margin{word, outcome.p_rej};
            }
        }
    }
    bool acc_ok = !report.min_acc_margin.has_value() || report.min_acc_margin->probability >= p;
    bool rej_ok = !report.min_rej_margin.has_value() || report.min_rej_margin->probability >= p;
    report.recognized = acc_ok && rej_ok;
    return report;
}

WordPredicate contains00_predicate(const Alphabet &alphabet) {
    const Symbol zero = alphabet.input_symbol("0");
    return [zero](const Word &w) {
        for (std::size_t k = 1; k < w.size(); k++) {
            if (w[k - 1] == zero && w[k] == zero) {
                return true;
            }
        }
        return false;
    };
}

WordPredicate ln_predicate(const Alphabet &alphabet, std::size_t n) {
    auto contains = contains00_predicate(alphabet);
    return [contains, n](const Word &w) { return w.size() == n && contains(w); };
}

WordPredicate length_predicate(std::size_t n) {
    return [n](const Word &w) { return w.size() == n; };
}

}  // namespace qfalab

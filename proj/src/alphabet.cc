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

#include "qfalab/alphabet.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qfalab {

namespace {

bool is_reserved(std::string_view name) {
    return name == kLeftMarkerName || name == kRightMarkerName || name == "¢" || name == "$";
}

}  // namespace

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
        throw std::invalid_argument("alphabet needs at least one input symbol");
    }
    std::set<std::string_view> seen;
    for (const auto &s : symbols_) {
        if (s.empty()) {
            throw std::invalid_argument("empty symbol name");
        }
        if (is_reserved(s)) {
            throw std::invalid_argument("symbol name '" + s + "' is reserved for an end marker");
        }
        if (s.find(',') != std::string::npos) {
            throw std::invalid_argument("symbol name '" + s + "' contains a comma");
        }
        if (!seen.insert(s).second) {
            throw std::invalid_argument("duplicate symbol name '" + s + "'");
        }
        single_char_ = single_char_ && s.size() == 1;
    }
}

Alphabet Alphabet::binary() {
    return Alphabet({"0", "1"});
}

Alphabet Alphabet::unary() {
    return Alphabet({"a"});
}

std::string Alphabet::name(Symbol s) const {
    if (s == left()) {
        return std::string(kLeftMarkerName);
    }
    if (s == right()) {
        return std::string(kRightMarkerName);
    }
    if (!is_input(s)) {
        throw std::invalid_argument("symbol index " + std::to_string(s.index) + " out of range");
    }
    return symbols_[s.index];
}

Symbol Alphabet::symbol(std::string_view name) const {
    if (name == kLeftMarkerName) {
        return left();
    }
    if (name == kRightMarkerName) {
        return right();
    }
    return input_symbol(name);
}

Symbol Alphabet::input_symbol(std::string_view name) const {
    auto it = std::find(symbols_.begin(), symbols_.end(), name);
    if (it == symbols_.end()) {
        throw std::invalid_argument("unknown input symbol '" + std::string(name) + "'");
    }
    return Symbol{static_cast<std::uint32_t>(it - symbols_.begin())};
}

Word Alphabet::parse_word(std::string_view text) const {
    Word word;
    if (text.empty()) {
        return word;
    }
    if (single_char_ && text.find(',') == std::string_view::npos) {
        for (char c : text) {
            word.push_back(input_symbol(std::string_view(&c, 1)));
        }
        return word;
    }
    size_t start = 0;
    while (true) {
        size_t end = text.find(',', start);
        word.push_back(input_symbol(text.substr(start, end == std::string_view::npos ? end : end - start)));
        if (end == std::string_view::npos) {
            break;
        }
        start = end + 1;
    }
    return word;
}

std::string Alphabet::format_word(const Word &word) const {
    std::string out;
    for (size_t k = 0; k < word.size(); k++) {
        if (!single_char_ && k > 0) {
            out += ',';
        }
        out += name(word[k]);
    }
    return out;
}

void Alphabet::check_word(const Word &word) const {
    for (size_t k = 0; k < word.size(); k++) {
        if (!is_input(word[k])) {
            throw std::invalid_argument(
                "word position " + std::to_string(k) + " holds symbol index " + std::to_string(word[k].index) +
                ", which is not an input symbol");
        }
    }
}

Word Alphabet::tape(const Word &word) const {
    check_word(word);
    Word t;
    t.reserve(word.size() + 2);
    t.push_back(left());
    t.insert(t.end(), word.begin(), word.end());
    t.push_back(right());
    return t;
}

std::vector<Word> words_of_length(const Alphabet &alphabet, std::size_t length) {
    const auto k = static_cast<std::uint32_t>(alphabet.input_size());
    std::vector<Word> out;
    Word w(length, Symbol{0});
    while (true) {
        out.push_back(w);
        size_t pos = length;
        while (pos > 0) {
            pos--;
            if (++w[pos].index < k) {
                break;
            }
            w[pos].index = 0;
            if (pos == 0) {
                return out;
            }
        }
        if (length == 0) {
            return out;
        }
    }
}

}  // namespace qfalab

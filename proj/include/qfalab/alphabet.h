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

#ifndef QFALAB_ALPHABET_H
#define QFALAB_ALPHABET_H

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfalab {

/// Index into the working alphabet. Input symbols come first, followed by the
/// left and right end markers.
struct Symbol {
    std::uint32_t index = 0;

    friend bool operator==(Symbol, Symbol) = default;
    friend auto operator<=>(Symbol, Symbol) = default;
};

using Word = std::vector<Symbol>;

inline constexpr std::string_view kLeftMarkerName = "LEFT";
inline constexpr std::string_view kRightMarkerName = "RIGHT";

/// Ordered input symbols plus the implicit end markers.
class Alphabet {
   public:
    /// Throws std::invalid_argument on empty, duplicate or reserved names.
    explicit Alphabet(std::vector<std::string> symbols);

    static Alphabet binary();
    static Alphabet unary();

    std::size_t input_size() const {
        return symbols_.size();
    }
    /// Size of the working alphabet (inputs plus both markers).
    std::size_t working_size() const {
        return symbols_.size() + 2;
    }
    Symbol left() const {
        return Symbol{static_cast<std::uint32_t>(symbols_.size())};
    }
    Symbol right() const {
        return Symbol{static_cast<std::uint32_t>(symbols_.size() + 1)};
    }
    bool is_input(Symbol s) const {
        return s.index < symbols_.size();
    }

    const std::vector<std::string> &input_names() const {
        return symbols_;
    }
    /// Name of any working symbol; markers render as LEFT / RIGHT.
    std::string name(Symbol s) const;
    /// Looks up a working symbol by name. Throws std::invalid_argument if unknown.
    Symbol symbol(std::string_view name) const;
    /// Input symbol by name. Throws std::invalid_argument for markers or unknown names.
    Symbol input_symbol(std::string_view name) const;

    /// Parses a word. When every symbol name is a single character the text is
    /// read character by character, otherwise it must be comma separated.
    /// The empty string is the empty word.
    Word parse_word(std::string_view text) const;
    std::string format_word(const Word &word) const;

    /// Throws std::invalid_argument if the word contains a non-input symbol.
    void check_word(const Word &word) const;

    /// The word ¢·word·$ actually fed to an automaton.
    Word tape(const Word &word) const;

    friend bool operator==(const Alphabet &, const Alphabet &) = default;

   private:
    std::vector<std::string> symbols_;
    bool single_char_ = true;
};

/// All words over the input symbols of exactly `length` letters, in
/// lexicographic order of symbol indices.
std::vector<Word> words_of_length(const Alphabet &alphabet, std::size_t length);

}  // namespace qfalab

#endif

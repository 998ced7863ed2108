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

#ifndef QFALAB_INTERCHANGE_H
#define QFALAB_INTERCHANGE_H

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "qfalab/automata.h"

namespace qfalab {

// Automaton interchange file:
//
//   { "model": "dfa" | "pfa" | "qfa",
//     "alphabet": ["0", "1"],
//     "states": 5, "initial": 0, "acc": [3], "rej": [4],
//     "matrices": { "0": [...], "1": [...], "LEFT": [...], "RIGHT": [...] } }
//
// Each matrix is a row-major array of states*states entries. DFA and PFA
// matrices are stochastic (row = source state). QFA entries are [re, im]
// pairs of the unitary acting on column vectors; a bare number is read as a
// real amplitude. Doubles are written in shortest round-trip form.

/// Throws std::invalid_argument (with a reason) on malformed input.
AnyAutomaton parse_automaton(std::string_view json);
AnyAutomaton read_automaton(std::istream &in);
AnyAutomaton load_automaton(const std::filesystem::path &path);

void write_automaton(std::ostream &out, const AnyAutomaton &automaton);
std::string serialize_automaton(const AnyAutomaton &automaton);
void save_automaton(const std::filesystem::path &path, const AnyAutomaton &automaton);

}  // namespace qfalab

#endif

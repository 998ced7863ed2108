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

#include "qfalab/interchange.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qfalab {

namespace {

using nlohmann::json;

struct RawMatrix {
    std::vector<Amplitude> entries;
    bool saw_pair = false;
};

struct RawAutomaton {
    std::optional<std::string> model;
    std::optional<std::vector<std::string>> alphabet;
    std::optional<std::uint64_t> states;
    std::optional<std::uint64_t> initial;
    std::optional<std::vector<StateId>> acc;
    std::optional<std::vector<StateId>> rej;
    std::map<std::string, RawMatrix> matrices;
    bool saw_matrices = false;
};

/// SAX consumer for the interchange schema. Matrix payloads go straight into
/// flat vectors, so large permutation automata never build a JSON DOM.
class InterchangeSax : public nlohmann::json_sax<json> {
   public:
    explicit InterchangeSax(RawAutomaton &raw) : raw_(raw) {
    }

    bool null() override {
        return scalar_value("null");
    }
    bool boolean(bool) override {
        return scalar_value("boolean");
    }
    bool number_integer(number_integer_t v) override {
        return number(static_cast<double>(v), true, v >= 0 ? static_cast<std::uint64_t>(v) : 0, v >= 0);
    }
    bool number_unsigned(number_unsigned_t v) override {
        return number(static_cast<double>(v), true, v, true);
    }
    bool number_float(number_float_t v, const string_t &) override {
        return number(v, false, 0, false);
    }
    bool string(string_t &v) override {
        if (depth_ == 1 && key_ == "model") {
            raw_.model = v;
            return true;
        }
        if (depth_ == 2 && key_ == "alphabet") {
            raw_.alphabet->push_back(v);
            return true;
        }
        return scalar_value("string");
    }
    bool binary(binary_t &) override {
        return fail("binary values are not supported");
    }
    bool start_object(std::size_t) override {
        depth_++;
        if (depth_ == 1) {
            return true;
        }
        if (depth_ == 2 && key_ == "matrices") {
            raw_.saw_matrices = true;
            return true;
        }
        if (in_known_field()) {
            return fail("unexpected object in field '" + key_ + "'");
        }
        return true;
    }
    bool end_object() override {
        depth_--;
        return true;
    }
    bool start_array(std::size_t) override {
        depth_++;
        if (depth_ == 1) {
            return fail("top level must be an object");
        }
        if (depth_ == 2) {
            if (key_ == "alphabet") {
                raw_.alphabet.emplace();
            } else if (key_ == "acc") {
                raw_.acc.emplace();
            } else if (key_ == "rej") {
                raw_.rej.emplace();
            } else if (in_known_field()) {
                return fail("field '" + key_ + "' must not be an array");
            }
            return true;
        }
        if (depth_ == 3 && key_ == "matrices") {
            current_ = &raw_.matrices[matrix_key_];
            current_->entries.clear();
            return true;
        }
        if (depth_ == 4 && current_ != nullptr) {
            pair_.clear();
            current_->saw_pair = true;
            return true;
        }
        if (in_known_field()) {
            return fail("unexpected nesting in field '" + key_ + "'");
        }
        return true;
    }
    bool end_array() override {
        if (depth_ == 4 && current_ != nullptr) {
            if (pair_.size() != 2) {
                return fail("complex entry in matrix '" + matrix_key_ + "' must be a [re, im] pair");
            }
            current_->entries.emplace_back(pair_[0], pair_[1]);
        }
        if (depth_ == 3 && current_ != nullptr) {
            current_ = nullptr;
        }
        depth_--;
        return true;
    }
    bool key(string_t &k) override {
        if (depth_ == 1) {
            key_ = k;
        } else if (depth_ == 2 && key_ == "matrices") {
            matrix_key_ = k;
        }
        return true;
    }
    bool parse_error(std::size_t, const std::string &, const nlohmann::detail::exception &ex) override {
        error_ = ex.what();
        return false;
    }

    const std::string &error() const {
        return error_;
    }

   private:
    bool in_known_field() const {
        static const char *known[] = {"model", "alphabet", "states", "initial", "acc", "rej", "matrices"};
        for (const char *k : known) {
            if (key_ == k) {
                return true;
            }
        }
        return false;
    }

    bool scalar_value(const char *what) {
        if (in_known_field()) {
            return fail(std::string("unexpected ") + what + " in field '" + key_ + "'");
        }
        return true;
    }

    bool number(double v, bool integral, std::uint64_t as_unsigned, bool non_negative) {
        if (depth_ == 1 && (key_ == "states" || key_ == "initial")) {
            if (!integral || !non_negative) {
                return fail("field '" + key_ + "' must be a non-negative integer");
            }
            (key_ == "states" ? raw_.states : raw_.initial) = as_unsigned;
            return true;
        }
        if (depth_ == 2 && (key_ == "acc" || key_ == "rej")) {
            if (!integral || !non_negative) {
                return fail("state indices in '" + key_ + "' must be non-negative integers");
            }
            (key_ == "acc" ? raw_.acc : raw_.rej)->push_back(static_cast<StateId>(as_unsigned));
            return true;
        }
        if (depth_ == 3 && current_ != nullptr) {
            current_->entries.emplace_back(v, 0.0);
            return true;
        }
        if (depth_ == 4 && current_ != nullptr) {
            pair_.push_back(v);
            return true;
        }
        return scalar_value("number");
    }

    bool fail(std::string message) {
        error_ = std::move(message);
        return false;
    }

    RawAutomaton &raw_;
    int depth_ = 0;
    std::string key_;
    std::string matrix_key_;
    RawMatrix *current_ = nullptr;
    std::vector<double> pair_;
    std::string error_;
};

template <typename T>
T require(const std::optional<T> &v, const char *field) {
    if (!v.has_value()) {
        throw std::invalid_argument(std::string("missing field '") + field + "'");
    }
    return *v;
}

template <typename T>
std::vector<SparseMatrix<T>> build_matrices(
    const RawAutomaton &raw, const Alphabet &alphabet, std::size_t n, bool complex_ok) {
    std::vector<SparseMatrix<T>> out;
    for (const auto &[name, _] : raw.matrices) {
        alphabet.symbol(name);  // rejects unknown matrix keys
    }
    for (std::size_t s = 0; s < alphabet.working_size(); s++) {
        auto name = alphabet.name(Symbol{static_cast<std::uint32_t>(s)});
        auto it = raw.matrices.find(name);
        if (it == raw.matrices.end()) {
            throw std::invalid_argument("missing matrix for symbol '" + name + "'");
        }
        const auto &entries = it->second.entries;
        if (entries.size() != n * n) {
            throw std::invalid_argument(
                "matrix '" + name + "' has " + std::to_string(entries.size()) + " entries, expected " +
                std::to_string(n * n));
        }
        std::vector<T> values;
        values.reserve(entries.size());
        for (const auto &e : entries) {
            if constexpr (std::is_same_v<T, double>) {
                if (e.imag() != 0 || (!complex_ok && it->second.saw_pair)) {
                    throw std::invalid_argument("matrix '" + name + "' has complex entries in a classical model");
                }
                values.push_back(e.real());
            } else {
                values.push_back(e);
            }
        }
        out.push_back(SparseMatrix<T>::from_dense(n, values));
    }
    return out;
}

AnyAutomaton assemble(const RawAutomaton &raw) {
    auto model = require(raw.model, "model");
    Alphabet alphabet(require(raw.alphabet, "alphabet"));
    auto n = static_cast<std::size_t>(require(raw.states, "states"));
    StatePartition partition{
        n, static_cast<StateId>(require(raw.initial, "initial")), require(raw.acc, "acc"), require(raw.rej, "rej")};
    if (!raw.saw_matrices) {
        throw std::invalid_argument("missing field 'matrices'");
    }
    if (model == "qfa") {
        return Qfa{alphabet, partition, build_matrices<Amplitude>(raw, alphabet, n, true), kDefaultTolerance};
    }
    if (model == "pfa") {
        return Pfa{alphabet, partition, build_matrices<double>(raw, alphabet, n, false), kDefaultTolerance};
    }
    if (model == "dfa") {
        Pfa as_pfa{alphabet, partition, build_matrices<double>(raw, alphabet, n, false), kDefaultTolerance};
        return dfa_from_pfa(as_pfa);
    }
    throw std::invalid_argument("unknown model '" + model + "'");
}

void write_double(std::ostream &out, double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    std::string_view text(buf, res.ptr - buf);
    out << text;
    // Keep floats recognizable as floats to JSON readers.
    if (text.find_first_of(".eEn") == std::string_view::npos) {
        out << ".0";
    }
}

void write_indices(std::ostream &out, const std::vector<StateId> &v) {
    out << '[';
    for (size_t k = 0; k < v.size(); k++) {
        out << (k ? ", " : "") << v[k];
    }
    out << ']';
}

template <typename T, typename F>
void write_matrix(std::ostream &out, const SparseMatrix<T> &m, F &&write_entry) {
    out << '[';
    for (size_t r = 0; r < m.dim(); r++) {
        auto row = m.row(r);
        size_t next = 0;
        for (size_t c = 0; c < m.dim(); c++) {
            if (r + c > 0) {
                out << ',';
            }
            if (next < row.size() && row[next].col == c) {
                write_entry(row[next].value);
                next++;
            } else {
                write_entry(T{});
            }
        }
    }
    out << ']';
}

}  // namespace

AnyAutomaton read_automaton(std::istream &in) {
    RawAutomaton raw;
    InterchangeSax sax(raw);
    bool ok = json::sax_parse(in, &sax);
    if (!ok) {
        throw std::invalid_argument("invalid automaton file: " + sax.error());
    }
    return assemble(raw);
}

AnyAutomaton parse_automaton(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read_automaton(in);
}

AnyAutomaton load_automaton(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path.string());
    }
    return read_automaton(in);
}

void write_automaton(std::ostream &out, const AnyAutomaton &automaton) {
    const auto &alphabet = automaton_alphabet(automaton);
    const StatePartition &partition = std::visit([](const auto &a) -> const StatePartition & { return a.partition; },
                                                 automaton);
    out << "{\"model\": " << json(model_name(automaton)).dump();
    out << ", \"alphabet\": " << json(alphabet.input_names()).dump();
    out << ", \"states\": " << partition.n_states;
    out << ", \"initial\": " << partition.initial;
    out << ", \"acc\": ";
    write_indices(out, partition.acc);
    out << ", \"rej\": ";
    write_indices(out, partition.rej);
    out << ", \"matrices\": {";
    std::optional<Pfa> dfa_matrices;
    if (const auto *dfa = std::get_if<Dfa>(&automaton)) {
        dfa_matrices = embed_as_pfa(*dfa);
    }
    for (size_t s = 0; s < alphabet.working_size(); s++) {
        auto name = alphabet.name(Symbol{static_cast<std::uint32_t>(s)});
        out << (s ? ", " : "") << json(name).dump() << ": ";
        if (dfa_matrices.has_value()) {
            write_matrix(out, dfa_matrices->matrices[s], [&](double v) { out << (v != 0 ? '1' : '0'); });
        } else if (const auto *pfa = std::get_if<Pfa>(&automaton)) {
            write_matrix(out, pfa->matrices[s], [&](double v) { write_double(out, v); });
        } else {
            write_matrix(out, std::get<Qfa>(automaton).unitaries[s], [&](const Amplitude &v) {
                out << '[';
                write_double(out, v.real());
                out << ',';
                write_double(out, v.imag());
                out << ']';
            });
        }
    }
    out << "}}\n";
}

std::string serialize_automaton(const AnyAutomaton &automaton) {
    std::ostringstream out;
    write_automaton(out, automaton);
    return out.str();
}

void save_automaton(const std::filesystem::path &path, const AnyAutomaton &automaton) {
    std::ofstream out(path);
    if (!out) {
        throw std::invalid_argument("cannot write " + path.string());
    }
    write_automaton(out, automaton);
}

}  // namespace qfalab

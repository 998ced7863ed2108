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
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qfalab/analysis.h"

namespace qfalab {

namespace {

std::optional<WordDomain> sweep_domain(std::size_t n, const Alphabet &alphabet, std::size_t cap) {
    auto wide = WordDomain::up_to_length(n + 2);
    if (domain_size(wide, alphabet) <= cap) {
        return wide;
    }
    auto exact = WordDomain::exact_length(n);
    if (domain_size(exact, alphabet) <= cap) {
        return exact;
    }
    return std::nullopt;
}

template <typename Automaton>
void check_construction(const Automaton &automaton, const std::string &id) {
    auto report = validate(automaton);
    if (!report.ok()) {
        throw std::runtime_error(id + " is invalid: " + report.str());
    }
}

void check_recognition(const AnyAutomaton &automaton, const std::string &id, const WordPredicate &predicate,
                       const std::optional<WordDomain> &domain, double p, std::size_t cap) {
    if (!domain.has_value()) {
        return;
    }
    auto report = verify_recognition(automaton, predicate, *domain, p, id, "ln", cap);
    if (!report.recognized) {
        throw std::runtime_error(id + " does not recognize L_n:\n" + report.str(automaton_alphabet(automaton)));
    }
}

}  // namespace

SeparationTable separation_table(const std::vector<std::size_t> &n_values, const SeparationOptions &options) {
    SeparationTable table;
    for (std::size_t n : n_values) {
        if (n < 4 || n % 2 != 0) {
            throw std::invalid_argument("table rows need even n >= 4, got " + std::to_string(n));
        }
        SeparationRow row;
        row.n = n;
        row.epsilon = options.epsilon;
        const std::string tag = " (n=" + std::to_string(n) + ")";

        auto dfa = build_dfa_Ln(n);
        check_construction(dfa, "dfa-ln" + tag);
        auto minimal = minimize_dfa(dfa);
        check_construction(minimal, "minimized dfa-ln" + tag);
        auto pfa = build_pfa_Ln(n, options.epsilon);
        check_construction(pfa.pfa, "pfa-ln" + tag);

        const auto predicate = ln_predicate(dfa.alphabet, n);
        const auto domain = sweep_domain(n, dfa.alphabet, options.verify_cap);
        row.verified_domain = domain.has_value() ? domain->describe() : "none";
        check_recognition(dfa, "dfa-ln" + tag, predicate, domain, 1.0, options.verify_cap);
        check_recognition(minimal, "minimized dfa-ln" + tag, predicate, domain, 1.0, options.verify_cap);
        check_recognition(pfa.pfa, "pfa-ln" + tag, predicate, domain, 1.0 - options.epsilon, options.verify_cap);

        if (n <= options.rfa_max_n) {
            auto rfa = build_tree_rfa(n, options.rfa_max_n);
            check_construction(rfa, "rfa-tree" + tag);
            if (!is_rfa(rfa)) {
                throw std::runtime_error("rfa-tree" + tag + " has non-permutation unitaries");
            }
            check_recognition(rfa, "rfa-tree" + tag, predicate, domain, 1.0, options.verify_cap);
            row.rfa_tree = rfa.size();
        }

        row.dfa_built = dfa.size();
        row.dfa_min = minimal.size();
        row.pfa_built = pfa.pfa.size();
        row.nerode = nerode_class_count(LnBits{n}, n).total();
        table.rows.push_back(std::move(row));
    }
    std::stable_sort(table.rows.begin(), table.rows.end(),
                     [](const SeparationRow &a, const SeparationRow &b) { return a.n < b.n; });
    return table;
}

void SeparationTable::write_csv(std::ostream &out) const {
    out << "n,dfa_min,dfa_built,pfa_built,rfa_tree,nerode,epsilon\n";
    char eps[32];
    for (const auto &row : rows) {
        std::snprintf(eps, sizeof(eps), "%g", row.epsilon);
        out << row.n << ',' << row.dfa_min << ',' << row.dfa_built << ',' << row.pfa_built << ',';
        if (row.rfa_tree.has_value()) {
            out << *row.rfa_tree;
        }
        out << ',' << row.nerode << ',' << eps << '\n';
    }
}

std::string SeparationTable::csv() const {
    std::ostringstream out;
    write_csv(out);
    return out.str();
}

}  // namespace qfalab

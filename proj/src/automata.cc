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

#include "qfalab/automata.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qfalab {

std::vector<HaltKind> StatePartition::kinds() const {
    std::vector<HaltKind> out(n_states, HaltKind::NonHalting);
    for (StateId q : rej) {
        if (q < n_states) {
            out[q] = HaltKind::Rejecting;
        }
    }
    for (StateId q : acc) {
        if (q < n_states) {
            out[q] = HaltKind::Accepting;
        }
    }
    return out;
}

std::vector<StateId> StatePartition::non_halting() const {
    std::vector<StateId> out;
    auto k = kinds();
    for (StateId q = 0; q < n_states; q++) {
        if (k[q] == HaltKind::NonHalting) {
            out.push_back(q);
        }
    }
    return out;
}

std::string ValidationReport::str() const {
    if (ok()) {
        return "ok";
    }
    std::ostringstream out;
    out << violations.size() << " violation(s)";
    for (const auto &v : violations) {
        out << "\n  ";
        if (!v.symbol.empty()) {
            out << "symbol " << v.symbol << ": ";
        }
        if (v.row.has_value()) {
            out << "row " << *v.row << ": ";
        }
        out << v.message;
        if (v.defect != 0) {
            out << " (defect " << v.defect << ")";
        }
    }
    return out.str();
}

namespace {

void check_partition(const StatePartition &p, std::vector<Violation> &out) {
    if (p.n_states == 0) {
        out.push_back({"", std::nullopt, 0, "automaton has no states"});
        return;
    }
    std::vector<int> seen(p.n_states, 0);
    auto mark = [&](const std::vector<StateId> &states, const char *label) {
        for (StateId q : states) {
            if (q >= p.n_states) {
                out.push_back({"", q, 0, std::string(label) + " state out of range"});
                continue;
            }
            if (seen[q]++) {
                out.push_back({"", q, 0, std::string("state listed twice among halting sets (") + label + ")"});
            }
        }
    };
    mark(p.acc, "accepting");
    mark(p.rej, "rejecting");
    if (p.initial >= p.n_states) {
        out.push_back({"", p.initial, 0, "initial state out of range"});
    } else if (seen[p.initial]) {
        out.push_back({"", p.initial, 0, "initial state must be non-halting"});
    }
}

template <typename T>
bool check_matrix_shapes(
    const Alphabet &alphabet, const StatePartition &p, const std::vector<SparseMatrix<T>> &matrices,
    std::vector<Violation> &out) {
    if (matrices.size() != alphabet.working_size()) {
        out.push_back(
            {"", std::nullopt, 0,
             "expected " + std::to_string(alphabet.working_size()) + " matrices, found " +
                 std::to_string(matrices.size())});
        return false;
    }
    bool ok = true;
    for (size_t s = 0; s < matrices.size(); s++) {
        if (matrices[s].dim() != p.n_states) {
            out.push_back(
                {alphabet.name(Symbol{static_cast<std::uint32_t>(s)}), std::nullopt, 0,
                 "matrix dimension " + std::to_string(matrices[s].dim()) + " != state count " +
                     std::to_string(p.n_states)});
            ok = false;
        }
    }
    return ok;
}

}  // namespace

ValidationReport validate(const Dfa &dfa) {
    ValidationReport report;
    check_partition(dfa.partition, report.violations);
    const auto &p = dfa.partition;
    if (dfa.transition.size() != p.n_states) {
        report.violations.push_back(
            {"", std::nullopt, 0,
             "transition table has " + std::to_string(dfa.transition.size()) + " rows, expected " +
                 std::to_string(p.n_states)});
        return report;
    }
    auto kinds = p.kinds();
    for (StateId q = 0; q < p.n_states; q++) {
        const auto &row = dfa.transition[q];
        if (row.size() != dfa.alphabet.working_size()) {
            report.violations.push_back({"", q, 0, "transition row has wrong symbol count"});
            continue;
        }
        for (size_t s = 0; s < row.size(); s++) {
            auto name = dfa.alphabet.name(Symbol{static_cast<std::uint32_t>(s)});
            if (!row[s].has_value()) {
                if (kinds[q] == HaltKind::NonHalting) {
                    report.violations.push_back({name, q, 0, "non-halting state has no transition"});
                }
            } else if (*row[s] >= p.n_states) {
                report.violations.push_back({name, q, 0, "transition target out of range"});
            }
        }
    }
    return report;
}

ValidationReport validate(const Pfa &pfa) {
    ValidationReport report;
    check_partition(pfa.partition, report.violations);
    if (!check_matrix_shapes(pfa.alphabet, pfa.partition, pfa.matrices, report.violations)) {
        return report;
    }
    for (size_t s = 0; s < pfa.matrices.size(); s++) {
        const auto &m = pfa.matrices[s];
        auto name = pfa.alphabet.name(Symbol{static_cast<std::uint32_t>(s)});
        for (size_t r = 0; r < m.dim(); r++) {
            double sum = 0;
            for (const auto &cell : m.row(r)) {
                if (!(cell.value >= -pfa.tolerance && cell.value <= 1 + pfa.tolerance)) {
                    double defect = cell.value < 0 ? -cell.value : cell.value - 1;
                    report.violations.push_back(
                        {name, r, defect, "entry in column " + std::to_string(cell.col) + " outside [0, 1]"});
                }
                sum += cell.value;
            }
            double defect = std::abs(sum - 1);
            if (!(defect <= pfa.tolerance)) {
                std::ostringstream msg;
                msg << "row sums to " << sum;
                report.violations.push_back({name, r, defect, msg.str()});
            }
        }
    }
    return report;
}

ValidationReport validate(const Qfa &qfa) {
    ValidationReport report;
    check_partition(qfa.partition, report.violations);
    if (!check_matrix_shapes(qfa.alphabet, qfa.partition, qfa.unitaries, report.violations)) {
        return report;
    }
    for (size_t s = 0; s < qfa.unitaries.size(); s++) {
        auto name = qfa.alphabet.name(Symbol{static_cast<std::uint32_t>(s)});
        auto g = qfa.unitaries[s].gram();
        // Rows of U^†U that are entirely zero hide a missing unit diagonal.
        for (size_t r = 0; r < g.dim(); r++) {
            double worst = std::abs(g.at(r, r) - Amplitude{1});
            for (const auto &cell : g.row(r)) {
                if (cell.col != r) {
                    worst = std::max(worst, std::abs(cell.value));
                }
            }
            if (!(worst <= qfa.tolerance)) {
                report.violations.push_back({name, r, worst, "U^dagger U deviates from identity"});
            }
        }
    }
    return report;
}

ValidationReport validate(const AnyAutomaton &automaton) {
    return std::visit([](const auto &a) { return validate(a); }, automaton);
}

bool is_rfa(const Qfa &qfa) {
    for (const auto &u : qfa.unitaries) {
        for (size_t r = 0; r < u.dim(); r++) {
            for (const auto &cell : u.row(r)) {
                if (cell.value != Amplitude{1}) {
                    return false;
                }
            }
        }
    }
    return true;
}

Pfa embed_as_pfa(const Dfa &dfa) {
    Pfa pfa{dfa.alphabet, dfa.partition, {}, kDefaultTolerance};
    for (size_t s = 0; s < dfa.alphabet.working_size(); s++) {
        std::vector<MatrixEntry<double>> entries;
        for (StateId q = 0; q < dfa.size(); q++) {
            const auto &target = dfa.transition.at(q).at(s);
            entries.push_back({q, target.value_or(q), 1.0});
        }
        pfa.matrices.push_back(SparseMatrix<double>::from_entries(dfa.size(), std::move(entries)));
    }
    return pfa;
}

Dfa dfa_from_pfa(const Pfa &pfa) {
    Dfa dfa{pfa.alphabet, pfa.partition, {}};
    auto kinds = pfa.partition.kinds();
    dfa.transition.assign(pfa.size(), std::vector<std::optional<StateId>>(pfa.alphabet.working_size()));
    for (size_t s = 0; s < pfa.matrices.size(); s++) {
        const auto &m = pfa.matrices[s];
        for (StateId q = 0; q < m.dim(); q++) {
            auto row = m.row(q);
            if (row.size() != 1 || row[0].value != 1.0) {
                throw std::invalid_argument(
                    "deterministic matrix for symbol " + pfa.alphabet.name(Symbol{static_cast<std::uint32_t>(s)}) +
                    " row " + std::to_string(q) + " is not a single 1");
            }
            StateId target = row[0].col;
            if (kinds[q] != HaltKind::NonHalting && target == q) {
                continue;
            }
            dfa.transition[q][s] = target;
        }
    }
    return dfa;
}

Pfa permutation_qfa_as_pfa(const Qfa &qfa) {
    Pfa pfa{qfa.alphabet, qfa.partition, {}, qfa.tolerance};
    for (const auto &u : qfa.unitaries) {
        std::vector<MatrixEntry<double>> entries;
        for (size_t r = 0; r < u.dim(); r++) {
            for (const auto &cell : u.row(r)) {
                entries.push_back({cell.col, r, std::norm(cell.value)});
            }
        }
        pfa.matrices.push_back(SparseMatrix<double>::from_entries(u.dim(), std::move(entries)));
    }
    return pfa;
}

std::size_t automaton_size(const AnyAutomaton &automaton) {
    return std::visit([](const auto &a) { return a.size(); }, automaton);
}

const Alphabet &automaton_alphabet(const AnyAutomaton &automaton) {
    return std::visit([](const auto &a) -> const Alphabet & { return a.alphabet; }, automaton);
}

std::string model_name(const AnyAutomaton &automaton) {
    switch (automaton.index()) {
        case 0:
            return "dfa";
        case 1:
            return "pfa";
        default:
            return "qfa";
    }
}

}  // namespace qfalab

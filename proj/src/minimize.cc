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
#include <deque>
#include <map>
#include <stdexcept>

#include "qfalab/analysis.h"

namespace qfalab {

namespace {

enum class Outcome { Accept, Reject, Continue };

/// Moore refinement until the class count stops growing. `signature(state,
/// classes)` returns the refinement key of a state under the current classes.
template <typename Signature>
std::vector<std::size_t> refine(std::vector<std::size_t> classes, Signature &&signature) {
    std::size_t count = 0;
    {
        std::vector<std::size_t> distinct = classes;
        std::sort(distinct.begin(), distinct.end());
        count = static_cast<std::size_t>(std::unique(distinct.begin(), distinct.end()) - distinct.begin());
    }
    while (true) {
        std::map<std::vector<std::size_t>, std::size_t> ids;
        std::vector<std::size_t> next(classes.size());
        for (std::size_t s = 0; s < classes.size(); s++) {
            auto key = signature(s, classes);
            key.insert(key.begin(), classes[s]);
            next[s] = ids.emplace(std::move(key), ids.size()).first->second;
        }
        if (ids.size() == count) {
            return next;
        }
        count = ids.size();
        classes = std::move(next);
    }
}

}  // namespace

Dfa minimize_dfa(const Dfa &dfa) {
    auto report = validate(dfa);
    if (!report.ok()) {
        throw std::invalid_argument("cannot minimize an invalid DFA: " + report.str());
    }
    const auto &alphabet = dfa.alphabet;
    const auto kinds = dfa.partition.kinds();
    const std::size_t inputs = alphabet.input_size();
    const auto left = alphabet.left().index;
    const auto right = alphabet.right().index;
    const StateId start = *dfa.transition[dfa.partition.initial][left];

    // Non-halting states reachable after ¢.
    std::vector<StateId> reachable;
    std::vector<bool> seen(dfa.size(), false);
    std::deque<StateId> queue;
    if (kinds[start] == HaltKind::NonHalting) {
        queue.push_back(start);
        seen[start] = true;
    }
    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        reachable.push_back(q);
        for (std::size_t s = 0; s < alphabet.working_size(); s++) {
            if (s == left) {
                continue;
            }
            StateId t = *dfa.transition[q][s];
            if (kinds[t] == HaltKind::NonHalting && !seen[t]) {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    std::sort(reachable.begin(), reachable.end());

    // Refinement universe: reachable states, then absorbing accept / reject sinks.
    const std::size_t m = reachable.size();
    const std::size_t sink_acc = m;
    const std::size_t sink_rej = m + 1;
    std::vector<std::size_t> local(dfa.size(), SIZE_MAX);
    for (std::size_t k = 0; k < m; k++) {
        local[reachable[k]] = k;
    }
    auto node_of = [&](StateId q) {
        switch (kinds[q]) {
            case HaltKind::Accepting:
                return sink_acc;
            case HaltKind::Rejecting:
                return sink_rej;
            default:
                return local[q];
        }
    };
    std::vector<Outcome> label(m + 2);
    std::vector<std::vector<std::size_t>> succ(m + 2, std::vector<std::size_t>(inputs));
    for (std::size_t k = 0; k < m; k++) {
        StateId q = reachable[k];
        StateId end = *dfa.transition[q][right];
        label[k] = kinds[end] == HaltKind::Accepting   ? Outcome::Accept
                   : kinds[end] == HaltKind::Rejecting ? Outcome::Reject
                                                       : Outcome::Continue;
        for (std::size_t s = 0; s < inputs; s++) {
            succ[k][s] = node_of(*dfa.transition[q][s]);
        }
    }
    label[sink_acc] = Outcome::Accept;
    label[sink_rej] = Outcome::Reject;
    for (std::size_t s = 0; s < inputs; s++) {
        succ[sink_acc][s] = sink_acc;
        succ[sink_rej][s] = sink_rej;
    }
    // A $ move into a non-halting state leaves the word undecided; states that
    // do so are further split by where they land.
    std::vector<std::size_t> classes(m + 2);
    for (std::size_t k = 0; k < m + 2; k++) {
        classes[k] = static_cast<std::size_t>(label[k]);
    }
    classes = refine(std::move(classes), [&](std::size_t k, const std::vector<std::size_t> &cls) {
        std::vector<std::size_t> key;
        for (std::size_t s = 0; s < inputs; s++) {
            key.push_back(cls[succ[k][s]]);
        }
        if (k < m && label[k] == Outcome::Continue) {
            key.push_back(cls[node_of(*dfa.transition[reachable[k]][right])]);
        }
        return key;
    });

    // Representative (smallest reachable member) of every class holding a
    // non-halting state.
    std::map<std::size_t, std::size_t> rep_of_class;
    for (std::size_t k = 0; k < m; k++) {
        rep_of_class.emplace(classes[k], k);
    }

    // Quotient states in BFS order from the ¢ target, halting states last. ¢ is
    // read once, so the class of the ¢ target serves as the initial state; a
    // lone placeholder start is needed only when ¢ halts outright.
    const bool halts_on_left = kinds[start] != HaltKind::NonHalting;
    std::map<std::size_t, StateId> new_id;
    std::vector<std::size_t> order;  // class ids in new-state order
    auto enqueue = [&](std::size_t cls) {
        if (new_id.emplace(cls, order.size()).second) {
            order.push_back(cls);
        }
    };
    if (halts_on_left) {
        order.push_back(SIZE_MAX);
    } else {
        enqueue(classes[local[start]]);
    }
    for (std::size_t pos = 0; pos < order.size(); pos++) {
        if (order[pos] == SIZE_MAX) {
            continue;
        }
        std::size_t rep = rep_of_class.at(order[pos]);
        for (std::size_t s = 0; s < inputs; s++) {
            std::size_t cls = classes[succ[rep][s]];
            if (rep_of_class.count(cls)) {
                enqueue(cls);
            }
        }
        StateId end = *dfa.transition[reachable[rep]][right];
        if (kinds[end] == HaltKind::NonHalting) {
            enqueue(classes[local[end]]);
        }
    }

    Dfa out{alphabet, StatePartition{}, {}};
    const std::size_t non_count = order.size();
    std::optional<StateId> acc_id, rej_id;
    auto halting_state = [&](Outcome o) -> StateId {
        auto &slot = o == Outcome::Accept ? acc_id : rej_id;
        if (!slot.has_value()) {
            slot = non_count + (acc_id.has_value() + rej_id.has_value());
        }
        return *slot;
    };
    std::vector<std::vector<std::optional<StateId>>> rows(
        non_count, std::vector<std::optional<StateId>>(alphabet.working_size()));
    auto target_of = [&](std::size_t node) -> StateId {
        std::size_t cls = classes[node];
        if (rep_of_class.count(cls)) {
            return new_id.at(cls);
        }
        return halting_state(label[node]);
    };
    if (halts_on_left) {
        StateId sink = halting_state(kinds[start] == HaltKind::Accepting ? Outcome::Accept : Outcome::Reject);
        rows[0].assign(alphabet.working_size(), sink);
    }
    for (StateId id = 0; id < non_count; id++) {
        if (order[id] == SIZE_MAX) {
            continue;
        }
        std::size_t rep = rep_of_class.at(order[id]);
        for (std::size_t s = 0; s < inputs; s++) {
            rows[id][s] = target_of(succ[rep][s]);
        }
        rows[id][right] = label[rep] == Outcome::Continue
                              ? new_id.at(classes[local[*dfa.transition[reachable[rep]][right]]])
                              : halting_state(label[rep]);
        rows[id][left] = id;
    }

    const std::size_t total = non_count + acc_id.has_value() + rej_id.has_value();
    rows.resize(total, std::vector<std::optional<StateId>>(alphabet.working_size()));
    out.partition.n_states = total;
    out.partition.initial = 0;
    if (acc_id.has_value()) {
        out.partition.acc.push_back(*acc_id);
    }
    if (rej_id.has_value()) {
        out.partition.rej.push_back(*rej_id);
    }
    out.transition = std::move(rows);
    return out;
}

namespace {

template <typename Pred>
NerodeCount nerode_impl(const Pred &predicate, std::size_t max_len, std::size_t pad) {
    const std::size_t horizon = max_len + pad;
    if (horizon > kNerodeHorizonCap) {
        throw std::length_error(
            "Nerode horizon " + std::to_string(horizon) + " exceeds cap " + std::to_string(kNerodeHorizonCap));
    }
    const std::size_t suffix_count = (std::size_t{1} << (horizon + 1)) - 1;
    bool saw_accept = false;
    bool saw_reject = false;
    // Bit (2^l - 1 + w) of the signature is predicate(u . w) for suffix w of length l.
    auto signature = [&](std::uint64_t bits, std::size_t len) {
        std::vector<std::uint64_t> sig((suffix_count + 63) / 64, 0);
        std::size_t index = 0;
        for (std::size_t l = 0; l <= horizon; l++) {
            for (std::uint64_t w = 0; w < (std::uint64_t{1} << l); w++, index++) {
                if (predicate(bits | (w << len), len + l)) {
                    sig[index / 64] |= std::uint64_t{1} << (index % 64);
                    saw_accept = true;
                } else {
                    saw_reject = true;
                }
            }
        }
        return sig;
    };

    std::map<std::vector<std::uint64_t>, std::size_t> classes;
    std::deque<std::pair<std::uint64_t, std::size_t>> frontier;
    classes.emplace(signature(0, 0), 0);
    frontier.emplace_back(0, 0);
    while (!frontier.empty()) {
        auto [bits, len] = frontier.front();
        frontier.pop_front();
        if (len >= max_len) {
            continue;
        }
        for (std::uint64_t bit = 0; bit < 2; bit++) {
            std::uint64_t child = bits | (bit << len);
            if (classes.emplace(signature(child, len + 1), classes.size()).second) {
                frontier.emplace_back(child, len + 1);
            }
        }
    }
    return {classes.size(), static_cast<std::size_t>(saw_accept) + static_cast<std::size_t>(saw_reject)};
}

}  // namespace

NerodeCount nerode_class_count(const BitPredicate &predicate, std::size_t max_len, std::size_t pad) {
    return nerode_impl(predicate, max_len, pad);
}

NerodeCount nerode_class_count(Contains00Bits predicate, std::size_t max_len, std::size_t pad) {
    return nerode_impl(predicate, max_len, pad);
}

NerodeCount nerode_class_count(LnBits predicate, std::size_t max_len, std::size_t pad) {
    return nerode_impl(predicate, max_len, pad);
}

}  // namespace qfalab

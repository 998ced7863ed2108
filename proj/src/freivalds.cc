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
#include <numeric>
#include <stdexcept>

#include "qfalab/constructions.h"

namespace qfalab {

namespace {

constexpr std::size_t kMaxPrimes = 2000;
constexpr double kRejectConstMax = 4.0;
constexpr double kRejectConstResolution = 1e-3;

bool is_prime(std::uint64_t v) {
    if (v < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= v; d++) {
        if (v % d == 0) {
            return false;
        }
    }
    return true;
}

double divert_probability(const FreivaldsParams &params, std::uint64_t p) {
    return std::min(1.0, params.reject_const * static_cast<double>(p) / static_cast<double>(params.n));
}

struct ErrorSides {
    double accept_on_target;
    double min_reject_off_target;
};

ErrorSides error_sides(const FreivaldsParams &params) {
    ErrorSides sides{freivalds_accept_probability(params, params.n), 1.0};
    for (std::size_t len = 0; len <= params.length_bound; len++) {
        if (len != params.n) {
            sides.min_reject_off_target =
                std::min(sides.min_reject_off_target, 1.0 - freivalds_accept_probability(params, len));
        }
    }
    return sides;
}

std::size_t max_collisions(const std::vector<std::uint64_t> &primes, std::size_t n, std::size_t bound) {
    std::size_t worst = 0;
    for (std::size_t len = 0; len <= bound; len++) {
        if (len == n) {
            continue;
        }
        std::size_t hits = 0;
        for (auto p : primes) {
            hits += (len % p == n % p);
        }
        worst = std::max(worst, hits);
    }
    return worst;
}

}  // namespace

double freivalds_accept_probability(const FreivaldsParams &params, std::size_t length) {
    double total = 0;
    for (auto p : params.primes) {
        if (length % p != params.n % p) {
            continue;
        }
        double survive = 1.0 - divert_probability(params, p);
        total += std::pow(survive, static_cast<double>(length / p));
    }
    return total / static_cast<double>(params.primes.size());
}

std::size_t freivalds_counter_states(const FreivaldsParams &params) {
    return std::accumulate(params.primes.begin(), params.primes.end(), std::size_t{0});
}

FreivaldsPfa build_freivalds_pfa(std::size_t n, double epsilon, std::size_t length_bound) {
    if (n < 2) {
        throw std::invalid_argument("n must be at least 2");
    }
    if (!(epsilon > 0 && epsilon < 0.5)) {
        throw std::invalid_argument("epsilon must lie in (0, 1/2)");
    }
    FreivaldsParams params;
    params.n = n;
    params.epsilon = epsilon;
    params.length_bound = length_bound == 0 ? kFreivaldsBoundFactor * n : length_bound;
    if (params.length_bound < n) {
        throw std::invalid_argument("length bound must be at least n");
    }

    // Smallest primes above log2(n); grow the set until residues of n are
    // shared by at most an eps/2 fraction of primes for every other length.
    std::uint64_t candidate = static_cast<std::uint64_t>(std::floor(std::log2(static_cast<double>(n)))) + 1;
    while (true) {
        while (!is_prime(candidate)) {
            candidate++;
        }
        params.primes.push_back(candidate++);
        params.max_collisions = max_collisions(params.primes, n, params.length_bound);
        if (2.0 * static_cast<double>(params.max_collisions) <= epsilon * static_cast<double>(params.primes.size())) {
            break;
        }
        if (params.primes.size() >= kMaxPrimes) {
            throw std::runtime_error("no prime set meets the residue-collision bound");
        }
    }

    // p_acc(a^n) falls and the worst off-target rejection rises with c; take
    // the c where the two cross, refined by bisection.
    auto gap = [&](double c) {
        params.reject_const = c;
        auto sides = error_sides(params);
        return sides.accept_on_target - sides.min_reject_off_target;
    };
    double chosen = kRejectConstMax;
    if (gap(kRejectConstMax) < 0) {
        double lo = 0, hi = kRejectConstMax;
        while (hi - lo > kRejectConstResolution) {
            double mid = 0.5 * (lo + hi);
            (gap(mid) >= 0 ? lo : hi) = mid;
        }
        params.reject_const = lo;
        auto at_lo = error_sides(params);
        params.reject_const = hi;
        auto at_hi = error_sides(params);
        chosen = std::min(at_lo.accept_on_target, at_lo.min_reject_off_target) >=
                         std::min(at_hi.accept_on_target, at_hi.min_reject_off_target)
                     ? lo
                     : hi;
    }
    params.reject_const = chosen;
    auto sides = error_sides(params);
    params.accept_on_target = sides.accept_on_target;
    params.min_reject_off_target = sides.min_reject_off_target;
    if (sides.accept_on_target < 1 - epsilon || sides.min_reject_off_target < 1 - epsilon) {
        throw std::runtime_error("no rejection constant reaches success probability 1 - epsilon");
    }

    const std::size_t counters = freivalds_counter_states(params);
    const StateId ini = 0;
    const StateId acc = counters + 1;
    const StateId rej = counters + 2;
    auto alphabet = Alphabet::unary();
    const Symbol letter = alphabet.input_symbol("a");
    const double d = static_cast<double>(params.primes.size());

    std::vector<MatrixEntry<double>> left, step, right;
    step.push_back({ini, ini, 1.0});
    right.push_back({ini, rej, 1.0});
    StateId offset = 1;
    for (auto p : params.primes) {
        const double divert = divert_probability(params, p);
        left.push_back({ini, offset, 1.0 / d});
        for (std::uint64_t r = 0; r < p; r++) {
            StateId q = offset + r;
            left.push_back({q, q, 1.0});
            if (r + 1 < p) {
                step.push_back({q, q + 1, 1.0});
            } else {
                step.push_back({q, offset, 1.0 - divert});
                step.push_back({q, rej, divert});
            }
            right.push_back({q, r == n % p ? acc : rej, 1.0});
        }
        offset += p;
    }
    for (StateId h : {acc, rej}) {
        left.push_back({h, h, 1.0});
        step.push_back({h, h, 1.0});
        right.push_back({h, h, 1.0});
    }

    const std::size_t total = counters + 3;
    Pfa pfa{alphabet, StatePartition{total, ini, {acc}, {rej}}, {}, kDefaultTolerance};
    pfa.matrices.resize(alphabet.working_size());
    pfa.matrices[letter.index] = SparseMatrix<double>::from_entries(total, std::move(step));
    pfa.matrices[alphabet.left().index] = SparseMatrix<double>::from_entries(total, std::move(left));
    pfa.matrices[alphabet.right().index] = SparseMatrix<double>::from_entries(total, std::move(right));
    return {std::move(pfa), params};
}

}  // namespace qfalab

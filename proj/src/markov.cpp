// Copyright 2026 The ftcc-lab Authors
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

#include "ftcc/markov.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ftcc {

BernsteinPoly gate_fail_clean() {
    // 3e^2 - 2e^3 = e^3 + 3 e^2 (1-e)
    return BernsteinPoly(3, {0, 0, 3, 1});
}

BernsteinPoly gate_fail_one_propagated() {
    // 2e - e^2 = e^3 + 3 e^2 (1-e) + 2 e (1-e)^2
    return BernsteinPoly(3, {0, 2, 3, 1});
}

BernsteinPoly gate_fail_certain() { return BernsteinPoly::one(3); }

namespace {

BernsteinPoly gate_fail_for(int propagated_inputs) {
    if (propagated_inputs == 0) return gate_fail_clean();
    if (propagated_inputs == 1) return gate_fail_one_propagated();
    return gate_fail_certain();
}

void check_row(const std::string &what, int row, const std::vector<BernsteinPoly> &trans, const BernsteinPoly &fail, int degree) {
    BernsteinPoly sum(degree);
    for (const auto &t : trans) {
        if (t.degree() != degree) throw std::logic_error(what + ": mixed polynomial degrees in row " + std::to_string(row));
        sum += t;
    }
    sum += fail;
    if (!(sum == BernsteinPoly::one(degree))) {
        throw std::logic_error(what + ": row " + std::to_string(row) + " does not sum to one: " + sum.str());
    }
}

}  // namespace

void ErrorChain::validate() const {
    const int n = size();
    if (n == 0) throw std::logic_error(name + ": empty chain");
    if (int(transitions.size()) != n || int(failure.size()) != n) throw std::logic_error(name + ": shape mismatch");
    for (int i = 0; i < n; ++i) {
        if (int(transitions[i].size()) != n) throw std::logic_error(name + ": ragged transition row");
        check_row(name, i, transitions[i], failure[i], degree);
    }
    const int k = micro_size();
    if (int(micro_transitions.size()) != k || int(micro_failure.size()) != k) {
        throw std::logic_error(name + ": microstate shape mismatch");
    }
    for (int j = 0; j < k; ++j) {
        if (int(micro_transitions[j].size()) != k) throw std::logic_error(name + ": ragged microstate row");
        check_row(name + " (micro)", j, micro_transitions[j], micro_failure[j], degree);
        const int m = micro[j].state;
        if (m < 0 || m >= n) throw std::logic_error(name + ": microstate maps outside the chain");
        std::vector<BernsteinPoly> lumped(n, BernsteinPoly(degree));
        for (int t = 0; t < k; ++t) lumped[micro[t].state] += micro_transitions[j][t];
        for (int t = 0; t < n; ++t) {
            if (!(lumped[t] == transitions[m][t])) {
                throw std::logic_error(name + ": microstate '" + micro[j].label + "' is not lumpable into '" + labels[m] +
                                       "' (target '" + labels[t] + "')");
            }
        }
        if (!(micro_failure[j] == failure[m])) {
            throw std::logic_error(name + ": microstate '" + micro[j].label + "' failure differs from its state");
        }
    }
}

ErrorChain build_level2_chain() {
    ErrorChain c;
    c.name = "level2";
    c.degree = 9;
    c.labels = {"A: no propagated errors", "B: one failed level-1 MAJ"};

    const BernsteinPoly gamma = gate_fail_clean();
    // Outer polynomials in gamma, degree 3.
    const BernsteinPoly stay_clean(3, {1, 0, 0, 0});         // (1-g)^3
    const BernsteinPoly one_failure(3, {0, 3, 0, 0});        // 3 g (1-g)^2
    const BernsteinPoly two_or_more(3, {0, 0, 3, 1});        // 3g^2 - 2g^3
    const BernsteinPoly from_b_clean = BernsteinPoly::monomial(6, 0).elevated(9);     // (1-e)^6
    const BernsteinPoly from_b_one = BernsteinPoly(6, {0, 6, 3, 0, 0, 0, 0}).elevated(9);  // 6e(1-e)^5 + 3e^2(1-e)^4

    c.transitions = {{stay_clean.compose(gamma), one_failure.compose(gamma)}, {from_b_clean, from_b_one}};
    c.failure = {two_or_more.compose(gamma), (from_b_clean + from_b_one).complement()};

    c.micro = {{"A", 0, 0, 9}, {"B", 1, 3, 9}};
    c.micro_transitions = c.transitions;
    c.micro_failure = c.failure;
    c.validate();
    return c;
}

std::array<int, 3> line_counts(const MarkGrid &grid) {
    std::array<int, 3> counts{};
    for (int line = 0; line < 3; ++line) {
        for (int pos = 0; pos < 3; ++pos) counts[line] += grid[line][pos] ? 1 : 0;
    }
    return counts;
}

std::optional<int> classify_level3(std::array<int, 3> counts) {
    int heavy_lines = 0;
    int total = 0;
    int heavy_marks = 0;
    for (int c : counts) {
        if (c < 0 || c > 3) throw std::invalid_argument("classify_level3: line count out of range");
        total += c;
        if (c >= 2) {
            ++heavy_lines;
            heavy_marks += c;
        }
    }
    // Two lines each carrying >= 2 propagated errors fail with certainty on
    // every square at the next step: logical error.
    if (heavy_lines >= 2) return std::nullopt;
    if (heavy_lines == 0) return total;  // 0, 1, 2 or 3 marks, none sharing a line
    const int others = total - heavy_marks;
    if (others >= 0 && others <= 2) return 4 + others;
    std::ostringstream diag;
    diag << "classify_level3: configuration with line counts (" << counts[0] << ',' << counts[1] << ',' << counts[2]
         << ") is neither logical nor in any state";
    throw std::logic_error(diag.str());
}

std::optional<int> classify_level3(const MarkGrid &grid) { return classify_level3(line_counts(grid)); }

ErrorChain build_level3_chain() {
    ErrorChain c;
    c.name = "level3";
    c.degree = 27;
    c.labels = {
        "no propagated errors",
        "1 propagated error",
        "2 propagated errors in distinct lines",
        "3 propagated errors in distinct lines",
        "2-3 in-line errors alone",
        "2-3 in-line errors + 1 other",
        "2-3 in-line errors + 2 others in distinct lines",
    };

    // Microstates are the line-count multisets; the lumped state only depends
    // on them, and so does every transition.
    const std::vector<std::array<int, 3>> micro_counts = {
        {0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}, {2, 0, 0},
        {3, 0, 0}, {2, 1, 0}, {3, 1, 0}, {2, 1, 1}, {3, 1, 1},
    };
    std::map<std::array<int, 3>, int> micro_index;
    for (int j = 0; j < int(micro_counts.size()); ++j) {
        const auto &mc = micro_counts[j];
        const auto cls = classify_level3(mc);
        if (!cls) throw std::logic_error("build_level3_chain: logical microstate in table");
        const int marks = mc[0] + mc[1] + mc[2];
        c.micro.push_back({"counts " + std::to_string(mc[0]) + std::to_string(mc[1]) + std::to_string(mc[2]), *cls,
                           3 * marks, 27});
        micro_index[mc] = j;
    }
    const int k = c.micro_size();
    c.micro_transitions.assign(k, std::vector<BernsteinPoly>(k, BernsteinPoly(c.degree)));
    c.micro_failure.assign(k, BernsteinPoly(c.degree));

    for (int j = 0; j < k; ++j) {
        const auto &counts = micro_counts[j];
        std::array<BernsteinPoly, 3> fail, pass;
        for (int line = 0; line < 3; ++line) {
            fail[line] = gate_fail_for(counts[line]);
            pass[line] = fail[line].complement();
        }
        // Gate (square a, line b) fails independently with fail[b]; its
        // failure becomes a mark at [line a][position b] for the next step.
        for (unsigned outcome = 0; outcome < (1u << 9); ++outcome) {
            BernsteinPoly prob = BernsteinPoly::one(0);
            MarkGrid next{};
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    const bool failed = (outcome >> (3 * a + b)) & 1u;
                    next[a][b] = failed;
                    prob = prob * (failed ? fail[b] : pass[b]);
                }
            }
            auto next_counts = line_counts(next);
            if (!classify_level3(next_counts)) {
                c.micro_failure[j] += prob;
                continue;
            }
            std::sort(next_counts.begin(), next_counts.end(), std::greater<>());
            const auto it = micro_index.find(next_counts);
            if (it == micro_index.end()) {
                throw std::logic_error("build_level3_chain: reachable configuration (" + std::to_string(next_counts[0]) +
                                       std::to_string(next_counts[1]) + std::to_string(next_counts[2]) +
                                       ") has no microstate");
            }
            c.micro_transitions[j][it->second] += prob;
        }
    }

    // Lump onto the seven states using the first microstate of each.
    const int n = c.size();
    c.transitions.assign(n, std::vector<BernsteinPoly>(n, BernsteinPoly(c.degree)));
    c.failure.assign(n, BernsteinPoly(c.degree));
    std::vector<bool> seen(n, false);
    for (int j = 0; j < k; ++j) {
        const int m = c.micro[j].state;
        if (seen[m]) continue;
        seen[m] = true;
        for (int t = 0; t < k; ++t) c.transitions[m][c.micro[t].state] += c.micro_transitions[j][t];
        c.failure[m] = c.micro_failure[j];
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
        throw std::logic_error("build_level3_chain: a state has no microstate");
    }
    c.validate();
    return c;
}

}  // namespace ftcc

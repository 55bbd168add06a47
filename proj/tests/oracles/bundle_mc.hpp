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

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

// Explicit 27-bundle model of the level-3 corrector: 3 squares of 3x3
// bundles, each carrying a propagated-error flag. Deliberately independent of
// the library: its own RNG, its own wiring and its own state classifier.
namespace ftcc_oracle {

struct Cube {
    // e[square][row][col]
    std::array<std::array<std::array<bool, 3>, 3>, 3> e{};

    int marks() const {
        int n = 0;
        for (const auto &sq : e)
            for (const auto &row : sq)
                for (bool b : row) n += b;
        return n;
    }
    bool all(bool v) const {
        for (const auto &sq : e)
            for (const auto &row : sq)
                for (bool b : row)
                    if (b != v) return false;
        return true;
    }
};

enum class Direction { kColumns, kRows };

inline Direction other(Direction d) { return d == Direction::kColumns ? Direction::kRows : Direction::kColumns; }

// One layer of nine level-1 MAJs. Each of a gate's three input slots is in
// error if its bundle carries a propagated error or, independently, with
// probability eps. Two or more slots in error fail the gate; the failure
// becomes a propagated error in every square.
template <typename Rng>
Cube step(const Cube &in, Direction dir, double eps, Rng &rng) {
    std::bernoulli_distribution incipient(eps);
    Cube out;
    for (int sq = 0; sq < 3; ++sq) {
        for (int line = 0; line < 3; ++line) {
            int wrong = 0;
            for (int slot = 0; slot < 3; ++slot) {
                const bool propagated = dir == Direction::kColumns ? in.e[sq][slot][line] : in.e[sq][line][slot];
                const bool fresh = eps > 0 && incipient(rng);
                wrong += propagated || fresh;
            }
            if (wrong < 2) continue;
            for (int s = 0; s < 3; ++s) {
                // Column k of square l -> (row l, col k); row k of square l -> (row k, col l).
                if (dir == Direction::kColumns) {
                    out.e[s][sq][line] = true;
                } else {
                    out.e[s][line][sq] = true;
                }
            }
        }
    }
    return out;
}

// Logical iff perfect subsequent layers drive every bundle into error.
inline bool is_logical(const Cube &c, Direction next) {
    std::mt19937_64 unused(0);
    Cube cur = c;
    Direction d = next;
    for (int i = 0; i < 8; ++i) {
        if (cur.all(false)) return false;
        if (cur.all(true)) return true;
        cur = step(cur, d, 0.0, unused);
        d = other(d);
    }
    return cur.all(true);
}

// Marks of square 0 as seen by the next layer: lines[line][pos].
inline std::array<std::array<bool, 3>, 3> lines_of(const Cube &c, Direction next) {
    std::array<std::array<bool, 3>, 3> m{};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) m[a][b] = next == Direction::kColumns ? c.e[0][b][a] : c.e[0][a][b];
    return m;
}

// State index in the chain's order, or -1 for a logical configuration:
// 0 none; 1 one; 2 two in distinct lines; 3 three in distinct lines;
// 4 an in-line set (2 or 3 in one line) alone; 5 in-line set + 1 other;
// 6 in-line set + 2 others in distinct lines.
inline int classify(const Cube &c, Direction next) {
    if (is_logical(c, next)) return -1;
    const auto m = lines_of(c, next);
    int heavy = -1;
    int total = 0;
    for (int a = 0; a < 3; ++a) {
        const int n = int(m[a][0]) + int(m[a][1]) + int(m[a][2]);
        total += n;
        if (n >= 2) heavy = n;
    }
    if (heavy < 0) return total;  // 0..3 scattered marks
    return 4 + (total - heavy);
}

// Places a 3x3 line/position pattern into every square for the given next direction.
inline Cube from_lines(const std::array<std::array<bool, 3>, 3> &m, Direction next) {
    Cube c;
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                if (next == Direction::kColumns) {
                    c.e[s][b][a] = m[a][b];
                } else {
                    c.e[s][a][b] = m[a][b];
                }
            }
    return c;
}

inline bool squares_agree(const Cube &c) { return c.e[0] == c.e[1] && c.e[0] == c.e[2]; }

// All 512 single-square patterns grouped by class (index 7: logical).
inline std::array<std::vector<Cube>, 8> patterns_by_class(Direction next) {
    std::array<std::vector<Cube>, 8> out;
    for (int mask = 0; mask < 512; ++mask) {
        std::array<std::array<bool, 3>, 3> m{};
        for (int i = 0; i < 9; ++i) m[i / 3][i % 3] = (mask >> i) & 1;
        const Cube c = from_lines(m, next);
        const int cls = classify(c, next);
        out[cls < 0 ? 7 : cls].push_back(c);
    }
    return out;
}

// counts[i][j]: transitions from state i to state j (j = 7: logical failure),
// starting each step from a uniformly drawn configuration of class i and a
// random layer direction.
struct RowCounts {
    std::array<std::array<std::uint64_t, 8>, 7> counts{};
    std::array<std::uint64_t, 7> trials{};
};

inline RowCounts sample_rows(double eps, std::uint64_t steps, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const std::array<std::array<std::vector<Cube>, 8>, 2> pats = {patterns_by_class(Direction::kColumns),
                                                                  patterns_by_class(Direction::kRows)};
    RowCounts rc;
    for (std::uint64_t t = 0; t < steps; ++t) {
        const int row = int(t % 7);
        const int d = int(rng() & 1u);
        const Direction dir = d == 0 ? Direction::kColumns : Direction::kRows;
        const auto &pool = pats[d][row];
        const Cube start = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        const Cube next = step(start, dir, eps, rng);
        const int cls = classify(next, other(dir));
        ++rc.trials[row];
        ++rc.counts[row][cls < 0 ? 7 : cls];
    }
    return rc;
}

// Long trajectory from the empty cube; a logical failure restarts it. Returns
// the mean erroneous-bundle fraction and its batch-means standard error.
struct Occupancy {
    double mean{0};
    double std_error{0};
    std::uint64_t failures{0};
};

inline Occupancy bundle_occupancy(double eps, std::uint64_t steps, std::uint64_t seed, int batches = 100) {
    std::mt19937_64 rng(seed);
    Cube c;
    Direction dir = Direction::kColumns;
    const std::uint64_t per = steps / std::uint64_t(batches);
    std::vector<double> means;
    Occupancy o;
    for (int b = 0; b < batches; ++b) {
        double sum = 0;
        for (std::uint64_t i = 0; i < per; ++i) {
            c = step(c, dir, eps, rng);
            dir = other(dir);
            if (is_logical(c, dir)) {
                ++o.failures;
                c = Cube{};
            }
            sum += c.marks() / 27.0;
        }
        means.push_back(sum / double(per));
    }
    double m = 0;
    for (double x : means) m += x;
    m /= double(batches);
    double v = 0;
    for (double x : means) v += (x - m) * (x - m);
    v /= double(batches - 1);
    o.mean = m;
    o.std_error = std::sqrt(v / double(batches));
    return o;
}

// |observed - n p| within z standard deviations, with a continuity correction.
inline bool within_sigma(std::uint64_t observed, std::uint64_t n, double p, double z) {
    const double mean = double(n) * p;
    const double sd = std::sqrt(double(n) * p * (1.0 - p));
    return std::abs(double(observed) - mean) <= z * sd + 0.5;
}

}  // namespace ftcc_oracle

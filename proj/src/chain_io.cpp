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

#include <istream>
#include <ostream>
#include <sstream>

#include "ftcc/markov.hpp"

namespace ftcc {

namespace {

constexpr const char *kMagic = "ftcc-chain";
constexpr int kVersion = 1;

void write_coeffs(std::ostream &out, const BernsteinPoly &p) {
    for (auto c : p.coeffs()) out << ' ' << c;
}

BernsteinPoly read_coeffs(std::istream &in, int degree) {
    std::vector<std::int64_t> coeffs(degree + 1);
    for (auto &c : coeffs) {
        if (!(in >> c)) throw std::runtime_error("read_chain: truncated coefficient list");
    }
    return BernsteinPoly(degree, std::move(coeffs));
}

std::string rest_of_line(std::istream &in) {
    std::string s;
    std::getline(in, s);
    const auto first = s.find_first_not_of(' ');
    return first == std::string::npos ? std::string() : s.substr(first);
}

void expect(std::istream &in, const std::string &keyword) {
    std::string word;
    if (!(in >> word) || word != keyword) {
        throw std::runtime_error("read_chain: expected '" + keyword + "', got '" + word + "'");
    }
}

}  // namespace

void write_chain(std::ostream &out, const ErrorChain &chain) {
    out << kMagic << ' ' << kVersion << '\n';
    out << "name " << chain.name << '\n';
    out << "degree " << chain.degree << '\n';
    out << "states " << chain.size() << '\n';
    for (int i = 0; i < chain.size(); ++i) out << "state " << i << ' ' << chain.labels[i] << '\n';
    for (int i = 0; i < chain.size(); ++i) {
        for (int j = 0; j < chain.size(); ++j) {
            if (chain.transitions[i][j].is_zero()) continue;
            out << "transition " << i << ' ' << j;
            write_coeffs(out, chain.transitions[i][j]);
            out << '\n';
        }
        out << "failure " << i;
        write_coeffs(out, chain.failure[i]);
        out << '\n';
    }
    out << "microstates " << chain.micro_size() << '\n';
    for (int j = 0; j < chain.micro_size(); ++j) {
        const auto &m = chain.micro[j];
        out << "microstate " << j << ' ' << m.state << ' ' << m.erroneous_bundles << ' ' << m.total_bundles << ' '
            << m.label << '\n';
    }
    for (int i = 0; i < chain.micro_size(); ++i) {
        for (int j = 0; j < chain.micro_size(); ++j) {
            if (chain.micro_transitions[i][j].is_zero()) continue;
            out << "micro_transition " << i << ' ' << j;
            write_coeffs(out, chain.micro_transitions[i][j]);
            out << '\n';
        }
        out << "micro_failure " << i;
        write_coeffs(out, chain.micro_failure[i]);
        out << '\n';
    }
    out << "end\n";
}

ErrorChain read_chain(std::istream &in) {
    ErrorChain c;
    std::string magic;
    int version = 0;
    if (!(in >> magic >> version) || magic != kMagic || version != kVersion) {
        throw std::runtime_error("read_chain: not an ftcc-chain v1 stream");
    }
    expect(in, "name");
    c.name = rest_of_line(in);
    expect(in, "degree");
    in >> c.degree;
    int n = 0;
    expect(in, "states");
    in >> n;
    if (!in || n <= 0 || c.degree < 0) throw std::runtime_error("read_chain: bad header");
    for (int i = 0; i < n; ++i) {
        int idx = -1;
        expect(in, "state");
        in >> idx;
        if (idx != i) throw std::runtime_error("read_chain: states out of order");
        c.labels.push_back(rest_of_line(in));
    }
    c.transitions.assign(n, std::vector<BernsteinPoly>(n, BernsteinPoly(c.degree)));
    c.failure.assign(n, BernsteinPoly(c.degree));
    c.micro_transitions.clear();
    int k = -1;
    std::string word;
    while (in >> word) {
        if (word == "transition" || word == "micro_transition") {
            int i = 0, j = 0;
            in >> i >> j;
            auto &table = word == "transition" ? c.transitions : c.micro_transitions;
            const int limit = word == "transition" ? n : k;
            if (!in || i < 0 || j < 0 || i >= limit || j >= limit) throw std::runtime_error("read_chain: bad " + word + " index");
            table[i][j] = read_coeffs(in, c.degree);
        } else if (word == "failure" || word == "micro_failure") {
            int i = 0;
            in >> i;
            auto &vec = word == "failure" ? c.failure : c.micro_failure;
            const int limit = word == "failure" ? n : k;
            if (!in || i < 0 || i >= limit) throw std::runtime_error("read_chain: bad " + word + " index");
            vec[i] = read_coeffs(in, c.degree);
        } else if (word == "microstates") {
            in >> k;
            if (!in || k <= 0) throw std::runtime_error("read_chain: bad microstate count");
            c.micro_transitions.assign(k, std::vector<BernsteinPoly>(k, BernsteinPoly(c.degree)));
            c.micro_failure.assign(k, BernsteinPoly(c.degree));
        } else if (word == "microstate") {
            MicroState m;
            int idx = -1;
            in >> idx >> m.state >> m.erroneous_bundles >> m.total_bundles;
            if (!in || idx != int(c.micro.size())) throw std::runtime_error("read_chain: microstates out of order");
            m.label = rest_of_line(in);
            c.micro.push_back(std::move(m));
        } else if (word == "end") {
            c.validate();
            return c;
        } else {
            throw std::runtime_error("read_chain: unknown record '" + word + "'");
        }
    }
    throw std::runtime_error("read_chain: missing 'end'");
}

}  // namespace ftcc

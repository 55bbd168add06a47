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
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ftcc/bernstein.hpp"

namespace ftcc {

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using RowVectorX = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// A refinement of one lumped state. Transitions out of every microstate of a
/// class are identical at the class level; microstates only differ in how many
/// physical bits they leave in error.
struct MicroState {
    std::string label;
    int state{0};              // index of the lumped state it belongs to
    int erroneous_bundles{0};  // bundles (3-bit groups) carrying a propagated error
    int total_bundles{1};
    double bit_error_weight() const { return double(erroneous_bundles) / double(total_bundles); }
};

/// Finite jump process over propagated-error configurations.
///
/// All transition and failure probabilities are polynomials in epsilon kept in
/// (eps, 1 - eps) form so their evaluation never cancels. Rows are
/// substochastic: sum_j transitions[m][j] + failure[m] == 1 identically.
struct ErrorChain {
    std::string name;
    int degree{0};
    std::vector<std::string> labels;
    std::vector<std::vector<BernsteinPoly>> transitions;
    std::vector<BernsteinPoly> failure;

    std::vector<MicroState> micro;
    std::vector<std::vector<BernsteinPoly>> micro_transitions;
    std::vector<BernsteinPoly> micro_failure;

    int size() const { return int(labels.size()); }
    int micro_size() const { return int(micro.size()); }

    template <typename Scalar>
    MatrixX<Scalar> transition_matrix(Scalar eps) const {
        return evaluate_matrix(transitions, eps);
    }
    template <typename Scalar>
    VectorX<Scalar> failure_vector(Scalar eps) const {
        return evaluate_vector(failure, eps);
    }
    template <typename Scalar>
    MatrixX<Scalar> micro_transition_matrix(Scalar eps) const {
        return evaluate_matrix(micro_transitions, eps);
    }
    template <typename Scalar>
    VectorX<Scalar> micro_failure_vector(Scalar eps) const {
        return evaluate_vector(micro_failure, eps);
    }

    /// Checks shape, the exact row identity and lumpability; throws
    /// std::logic_error with a diagnostic on the first violation.
    void validate() const;

   private:
    template <typename Scalar>
    static MatrixX<Scalar> evaluate_matrix(const std::vector<std::vector<BernsteinPoly>> &polys, Scalar eps) {
        const auto n = Eigen::Index(polys.size());
        MatrixX<Scalar> t(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            for (Eigen::Index j = 0; j < n; ++j) t(i, j) = polys[i][j](eps);
        }
        return t;
    }
    template <typename Scalar>
    static VectorX<Scalar> evaluate_vector(const std::vector<BernsteinPoly> &polys, Scalar eps) {
        VectorX<Scalar> v(Eigen::Index(polys.size()));
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = polys[i](eps);
        return v;
    }
};

/// Single-gate failure probabilities in (eps, 1-eps) form, degree 3.
/// No propagated input: at least two of three incipient errors.
BernsteinPoly gate_fail_clean();
/// One propagated input: at least one incipient error among the other two.
BernsteinPoly gate_fail_one_propagated();
/// Two or more propagated inputs: certain failure.
BernsteinPoly gate_fail_certain();

/// The three-state (A, B, C) model of the 27-bit code.
ErrorChain build_level2_chain();

/// Marks on the 3x3 square of level-1 MAJ positions, indexed
/// [line][position]: "line" is the gate line the mark will feed at the next
/// step, "position" the slot within that line.
using MarkGrid = std::array<std::array<bool, 3>, 3>;

/// Marks per line of a configuration.
std::array<int, 3> line_counts(const MarkGrid &grid);

/// Lumped level-3 state (0..6) of a mark configuration, or nullopt if the
/// configuration is already a logical error (two lines carrying >= 2 marks).
std::optional<int> classify_level3(const MarkGrid &grid);
std::optional<int> classify_level3(std::array<int, 3> counts);

/// The seven-state model of the 81-bit code, built by exhaustive enumeration
/// of gate-failure outcomes from every configuration type.
ErrorChain build_level3_chain();

template <typename Scalar>
struct SteadyState {
    VectorX<Scalar> pi;
    Scalar p_ss{0};
    int iterations{0};
    Scalar residual{0};
};

class ConvergenceError : public std::runtime_error {
   public:
    ConvergenceError(const std::string &what, double residual) : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

   private:
    double residual_;
};

struct PowerIterationOptions {
    double tolerance = 1e-15;
    int max_iterations = 1'000'000;
};

/// Stationary distribution of the row-normalized matrix by power iteration.
/// The start vector is concentrated on state 0.
template <typename Scalar>
SteadyState<Scalar> stationary(const MatrixX<Scalar> &substochastic, const PowerIterationOptions &opts = {}) {
    const Eigen::Index n = substochastic.rows();
    VectorX<Scalar> rowsum = substochastic.rowwise().sum();
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(rowsum(i) > Scalar(0))) {
            throw std::domain_error("stationary: row " + std::to_string(i) + " has no surviving mass");
        }
    }
    const MatrixX<Scalar> normalized = rowsum.cwiseInverse().asDiagonal() * substochastic;
    RowVectorX<Scalar> pi = RowVectorX<Scalar>::Zero(n);
    pi(0) = Scalar(1);
    SteadyState<Scalar> out;
    const Scalar tol = Scalar(opts.tolerance);
    for (int it = 1; it <= opts.max_iterations; ++it) {
        RowVectorX<Scalar> next = pi * normalized;
        next /= next.sum();
        const Scalar change = (next - pi).cwiseAbs().maxCoeff();
        // Small components must settle relatively as well, otherwise a tiny
        // occupancy would be frozen at its first few iterates.
        bool settled = change < tol;
        for (Eigen::Index i = 0; settled && i < n; ++i) {
            using std::abs;
            if (abs(next(i) - pi(i)) > Scalar(1e-12) * next(i)) settled = false;
        }
        pi = next;
        if (settled) {
            out.pi = pi.transpose();
            out.iterations = it;
            out.residual = change;
            return out;
        }
        out.residual = change;
    }
    throw ConvergenceError("stationary: power iteration did not converge", double(out.residual));
}

/// Conditional steady state of the chain at epsilon and the per-phase logical
/// failure probability p_ss = pi . failure(eps).
template <typename Scalar>
SteadyState<Scalar> steady_state(const ErrorChain &chain, Scalar eps, const PowerIterationOptions &opts = {}) {
    if (!(eps >= Scalar(0) && eps < Scalar(1))) {
        throw std::invalid_argument("steady_state: epsilon must lie in [0, 1)");
    }
    if (eps == Scalar(0)) {
        SteadyState<Scalar> s;
        s.pi = VectorX<Scalar>::Zero(chain.size());
        s.pi(0) = Scalar(1);
        return s;
    }
    auto s = stationary<Scalar>(chain.transition_matrix(eps), opts);
    s.p_ss = s.pi.dot(chain.failure_vector(eps));
    return s;
}

/// Occupancy-weighted fraction of erroneous bits per lumped state at epsilon.
template <typename Scalar>
VectorX<Scalar> bit_error_weight(const ErrorChain &chain, Scalar eps, const PowerIterationOptions &opts = {}) {
    VectorX<Scalar> mass = VectorX<Scalar>::Zero(chain.size());
    VectorX<Scalar> weighted = VectorX<Scalar>::Zero(chain.size());
    VectorX<Scalar> pi;
    if (eps == Scalar(0)) {
        pi = VectorX<Scalar>::Zero(chain.micro_size());
        pi(0) = Scalar(1);
    } else {
        pi = stationary<Scalar>(chain.micro_transition_matrix(eps), opts).pi;
    }
    for (int j = 0; j < chain.micro_size(); ++j) {
        const auto &m = chain.micro[j];
        mass(m.state) += pi(j);
        weighted(m.state) += pi(j) * Scalar(m.bit_error_weight());
    }
    VectorX<Scalar> w(chain.size());
    for (int i = 0; i < chain.size(); ++i) {
        // Unvisited state: fall back to the plain average of its microstates.
        if (mass(i) > Scalar(0)) {
            w(i) = weighted(i) / mass(i);
        } else {
            Scalar sum = 0;
            int count = 0;
            for (const auto &m : chain.micro) {
                if (m.state == i) {
                    sum += Scalar(m.bit_error_weight());
                    ++count;
                }
            }
            w(i) = sum / Scalar(count);
        }
    }
    return w;
}

/// Steady-state probability that a randomly selected physical bit carries a
/// propagated error: sum_m pi_m * bit_error_weight_m.
template <typename Scalar>
Scalar propagated_bit_error(const ErrorChain &chain, Scalar eps, const PowerIterationOptions &opts = {}) {
    if (!(eps >= Scalar(0) && eps < Scalar(1))) {
        throw std::invalid_argument("propagated_bit_error: epsilon must lie in [0, 1)");
    }
    if (eps == Scalar(0)) return Scalar(0);
    const auto s = steady_state(chain, eps, opts);
    return s.pi.dot(bit_error_weight(chain, eps, opts));
}

/// Text serialization (see README for the format).
void write_chain(std::ostream &out, const ErrorChain &chain);
ErrorChain read_chain(std::istream &in);

}  // namespace ftcc

// Copyright 2026 The weakval Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Measurement protocols for pre- and post-selected spin ensembles:
 *
 *  - ideal (strong) von Neumann measurement,
 *  - SWM: many independent weakly coupled pointers, post-selected ensemble mean,
 *  - STWM: one pointer coupled to the collective observable (1/N) sum A_i,
 *  - NSWM: one readout of the total momentum plus relative positions that
 *    rotate each particle's pre-selection before the weak value is taken.
 *
 * Every protocol keeps its exact evolution next to the weak-value
 * approximation so the two can be compared on the same grid.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakval/pointer.hpp"
#include "weakval/rng.hpp"
#include "weakval/spin.hpp"

namespace weakval {

/// Axis together with the eigenvalue sign selected along it.
struct SignedAxis {
    BlochAxis axis = BlochAxis::x();
    int sign = +1;

    SpinState state() const { return eigenstate(axis, sign); }
};

struct Scenario {
    SignedAxis pre{BlochAxis::x(), +1};
    SignedAxis post{BlochAxis::y(), +1};
    BlochAxis observable = BlochAxis::in_xy_plane(45.0);
    /// Integrated coupling strength.
    double lambda = 0.1;
    /// Pointer position spread Delta Q.
    double pointer_spread = 1.0;
    std::size_t particle_count = 1;
    std::size_t trial_count = 1000;
    std::uint64_t seed = 42;
    /// Chosen per protocol when absent.
    std::optional<GridSpec> grid;

    void validate() const;
    PrePostSelection selection() const { return {pre.state(), post.state()}; }
    SpinOperator observable_operator() const { return spin_along(observable); }
    GaussianSpec pointer() const { return {0.0, pointer_spread}; }
};

// ---------------------------------------------------------------- ideal --

struct MomentumPeak {
    double eigenvalue;
    /// Mean momentum over the part of the axis nearest lambda * eigenvalue.
    double center;
    double weight;
};

struct IdealResult {
    std::vector<MomentumPeak> peaks;
    /// Set when lambda * (eigenvalue gap) <= 4 Delta P.
    std::optional<std::string> warning;
};

/// Strong measurement: couples, traces out the spin and reads the momentum
/// peaks near lambda * a_i. Peaks with weight below 1e-9 are dropped.
IdealResult run_ideal(const Scenario &scenario);

// ------------------------------------------------------------------ SWM --

struct SwmResult {
    std::vector<double> accepted_readings;
    double acceptance_rate;
    double mean_shift;
    double standard_error;
    /// mean_shift / lambda (NaN when lambda = 0).
    double estimated_weak_value;
    /// Probability of the post-selection from the exact joint state.
    double postselection_probability;
};

/// Monte Carlo over scenario.trial_count independent trials. Trial t draws
/// from RandomStream(seed, t): accept with the exact post-selection
/// probability, then one momentum reading from the conditional pointer
/// distribution by inverse CDF. Output is independent of `workers`.
SwmResult run_swm(const Scenario &scenario, unsigned workers = 1);

// ----------------------------------------------------------------- STWM --

struct StwmResult {
    /// Normalized post-selected pointer in the momentum representation.
    GridWavefunction pointer_state;
    double shift;
    double uncertainty;
    /// |<post|pre>|^(2N), closed form.
    double success_probability;
    double weak_value_reference;
};

/// Pointer coupled to (lambda/N) Q sum_i A_i with every particle post-selected:
/// Phi(Q) = [<post| exp{i (lambda/N) Q A} |pre>]^N Gaussian(Q).
StwmResult stwm_pointer_state(const Scenario &scenario);

// ----------------------------------------------------------------- NSWM --

struct NswmSample {
    std::vector<double> coordinates;
    /// sum_j Q_j / sqrt(N)
    double cm_coordinate;
    /// x_j = Q_j - mean(Q); sums to zero.
    std::vector<double> relative_positions;
};

/// Draws Q_j i.i.d. from the pointer position density (spread Delta).
NswmSample nswm_sample(const Scenario &scenario, RandomStream &rng);

struct NswmCorrection {
    std::vector<SpinState> rotated_states;
    std::vector<Complex> weak_values;
    /// <post|psi_j> for each rotated state.
    std::vector<Complex> overlaps;
};

/// |psi_j> = exp{i lambda x_j A} |pre>, and the weak value of A for (|psi_j>, post).
/// Throws OrthogonalSelectionError naming the particle index.
NswmCorrection nswm_correct(const Scenario &scenario, std::span<const double> relative_positions);

/// Grid for NSWM wavefunctions: Q in [-8 Delta, 8 Delta), 1024 points
/// unless the scenario supplies one.
GridSpec nswm_grid(const Scenario &scenario);

/// prod_j <post| exp{i (lambda/sqrt N) Q A} |psi_j> * normalized Gaussian(Q),
/// unnormalized overall; position representation.
GridWavefunction nswm_exact_cm_state(const Scenario &scenario, std::span<const double> relative_positions);

/// prefactor * exp{i (lambda/sqrt N) Q sum_j w_j} * normalized Gaussian(Q).
/// Pass the product of the rotated overlaps as prefactor to compare with the
/// exact state on raw samples.
GridWavefunction nswm_approx_cm_state(const Scenario &scenario, std::span<const Complex> weak_values,
                                      Complex prefactor = 1.0);

/// Momentum mean of the normalized state.
double nswm_momentum_shift(const GridWavefunction &exact_cm_state);

/// (lambda / sqrt N) sum_j Re(w_j)
double nswm_shift_formula(std::span<const Complex> weak_values, double lambda, std::size_t particle_count);

struct NswmRun {
    NswmSample sample;
    NswmCorrection correction;
    GridWavefunction exact_cm_state;
    GridWavefunction approx_cm_state;
    double momentum_shift_exact;
    double momentum_shift_formula;
    double l2_error;
    double fidelity;
    /// Imaginary part of (lambda/sqrt N) sum_j w_j; reported, not part of the shift.
    double imaginary_shift;
    /// Every rotated weak value lies outside the eigenvalue range.
    bool eccentric;
};

/// Full NSWM procedure with relative positions drawn from RandomStream(seed, 0).
NswmRun run_nswm(const Scenario &scenario);

struct WeakValueGroup {
    std::size_t count;
    SpinState rotated_state;
    Complex weak_value;
};

struct WeightedWeakValueGroup {
    std::vector<WeakValueGroup> groups;

    std::size_t total() const;
    /// sum_i n_i * eta_i
    Complex weighted_sum() const;
};

/// Greedy clustering of rotated states: a particle joins the first group whose
/// representative has fidelity |<rep|psi>|^2 >= 1 - angle_tolerance.
WeightedWeakValueGroup group_weak_values(std::span<const SpinState> rotated_states,
                                         std::span<const Complex> weak_values, double angle_tolerance);

/// Approximate CM state rebuilt from groups: prod_i exp{i lambda Q n_i eta_i / sqrt N}.
GridWavefunction grouped_approx_cm_state(const Scenario &scenario, const WeightedWeakValueGroup &groups,
                                         Complex prefactor = 1.0);

} // namespace weakval

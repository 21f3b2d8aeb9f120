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

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "weakval/errors.hpp"
#include "weakval/protocols.hpp"

namespace weakval {

namespace {

std::vector<double> normalized_gaussian(const GridSpec &grid, double spread) {
    const double amp = std::pow(2.0 * std::numbers::pi * spread * spread, -0.25);
    std::vector<double> g(grid.count());
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double q = grid.position(j);
        g[j] = amp * std::exp(-q * q / (4.0 * spread * spread));
    }
    return g;
}

} // namespace

NswmSample nswm_sample(const Scenario &scenario, RandomStream &rng) {
    scenario.validate();
    const std::size_t n = scenario.particle_count;
    std::normal_distribution<double> dist(0.0, scenario.pointer_spread);
    NswmSample s;
    s.coordinates.resize(n);
    double sum = 0.0;
    for (double &q : s.coordinates) {
        q = dist(rng.engine());
        sum += q;
    }
    const double mean = sum / static_cast<double>(n);
    s.cm_coordinate = sum / std::sqrt(static_cast<double>(n));
    s.relative_positions.resize(n);
    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        s.relative_positions[j] = s.coordinates[j] - mean;
        residual += s.relative_positions[j];
    }
    // second pass removes the rounding left by the first subtraction
    residual /= static_cast<double>(n);
    for (double &x : s.relative_positions) {
        x -= residual;
    }
    return s;
}

NswmCorrection nswm_correct(const Scenario &scenario, std::span<const double> relative_positions) {
    scenario.validate();
    const PrePostSelection sel = scenario.selection();
    const SpinOperator op = scenario.observable_operator();
    NswmCorrection c;
    c.rotated_states.reserve(relative_positions.size());
    c.weak_values.reserve(relative_positions.size());
    c.overlaps.reserve(relative_positions.size());
    for (std::size_t j = 0; j < relative_positions.size(); ++j) {
        const SpinState psi(rotation_about(scenario.observable, scenario.lambda * relative_positions[j]).apply(sel.pre));
        const Complex ov = overlap(sel.post, psi);
        if (std::abs(ov) <= kOrthogonalityThreshold) {
            throw OrthogonalSelectionError("orthogonal selection for particle " + std::to_string(j) +
                                           ": rotated pre-selection is orthogonal to the post-selection");
        }
        c.rotated_states.push_back(psi);
        c.overlaps.push_back(ov);
        c.weak_values.push_back(weak_value({psi, sel.post}, op));
    }
    return c;
}

GridSpec nswm_grid(const Scenario &scenario) {
    if (scenario.grid) {
        return *scenario.grid;
    }
    constexpr std::size_t count = 1024;
    const double d = scenario.pointer_spread;
    return {-8.0 * d, 16.0 * d / static_cast<double>(count), count};
}

GridWavefunction nswm_exact_cm_state(const Scenario &scenario, std::span<const double> relative_positions) {
    const NswmCorrection corr = nswm_correct(scenario, relative_positions);
    const GridSpec grid = nswm_grid(scenario);
    const std::vector<double> gauss = normalized_gaussian(grid, scenario.pointer_spread);
    const double coupling = scenario.lambda / std::sqrt(static_cast<double>(relative_positions.size()));
    const Eigen::RowVector2cd bra = scenario.selection().post.amplitudes().adjoint();

    std::vector<Complex> out(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        const Eigen::RowVector2cd bra_u =
            bra * rotation_about(scenario.observable, coupling * grid.position(i)).matrix();
        Complex prod = gauss[i];
        for (const SpinState &psi : corr.rotated_states) {
            prod *= (bra_u * psi.amplitudes()).value();
        }
        out[i] = prod;
    }
    return {grid, Representation::Position, std::move(out)};
}

GridWavefunction nswm_approx_cm_state(const Scenario &scenario, std::span<const Complex> weak_values,
                                      Complex prefactor) {
    scenario.validate();
    Complex total = 0.0;
    for (const Complex &w : weak_values) {
        total += w;
    }
    const std::size_t n = weak_values.empty() ? scenario.particle_count : weak_values.size();
    const GridSpec grid = nswm_grid(scenario);
    const std::vector<double> gauss = normalized_gaussian(grid, scenario.pointer_spread);
    const double coupling = scenario.lambda / std::sqrt(static_cast<double>(n));
    std::vector<Complex> out(grid.count());
    for (std::size_t i = 0; i < grid.count(); ++i) {
        out[i] = prefactor * std::exp(Complex(0.0, coupling * grid.position(i)) * total) * gauss[i];
    }
    return {grid, Representation::Position, std::move(out)};
}

double nswm_momentum_shift(const GridWavefunction &exact_cm_state) {
    const GridWavefunction p = exact_cm_state.representation() == Representation::Momentum
                                   ? exact_cm_state
                                   : to_momentum(exact_cm_state);
    return moments(p).mean;
}

double nswm_shift_formula(std::span<const Complex> weak_values, double lambda, std::size_t particle_count) {
    double sum = 0.0;
    for (const Complex &w : weak_values) {
        sum += w.real();
    }
    return lambda / std::sqrt(static_cast<double>(particle_count)) * sum;
}

NswmRun run_nswm(const Scenario &scenario) {
    scenario.validate();
    RandomStream rng(scenario.seed, 0);
    NswmSample sample = nswm_sample(scenario, rng);
    NswmCorrection corr = nswm_correct(scenario, sample.relative_positions);
    Complex prefactor = 1.0;
    double imag = 0.0;
    bool eccentric = true;
    for (std::size_t j = 0; j < corr.overlaps.size(); ++j) {
        prefactor *= corr.overlaps[j];
        imag += corr.weak_values[j].imag();
        eccentric = eccentric && std::abs(corr.weak_values[j]) > 1.0;
    }
    const std::size_t n = scenario.particle_count;
    GridWavefunction exact = nswm_exact_cm_state(scenario, sample.relative_positions);
    GridWavefunction approx = nswm_approx_cm_state(scenario, corr.weak_values, prefactor);
    const double shift_exact = nswm_momentum_shift(exact);
    const double shift_formula = nswm_shift_formula(corr.weak_values, scenario.lambda, n);
    const double err = l2_error(approx, exact);
    const double fid = fidelity(approx, exact);
    return {std::move(sample),
            std::move(corr),
            std::move(exact),
            std::move(approx),
            shift_exact,
            shift_formula,
            err,
            fid,
            scenario.lambda / std::sqrt(static_cast<double>(n)) * imag,
            eccentric};
}

std::size_t WeightedWeakValueGroup::total() const {
    std::size_t t = 0;
    for (const auto &g : groups) {
        t += g.count;
    }
    return t;
}

Complex WeightedWeakValueGroup::weighted_sum() const {
    Complex s = 0.0;
    for (const auto &g : groups) {
        s += static_cast<double>(g.count) * g.weak_value;
    }
    return s;
}

WeightedWeakValueGroup group_weak_values(std::span<const SpinState> rotated_states,
                                         std::span<const Complex> weak_values, double angle_tolerance) {
    if (rotated_states.size() != weak_values.size()) {
        throw ValidationError("group_weak_values: states and weak values differ in length");
    }
    WeightedWeakValueGroup out;
    for (std::size_t j = 0; j < rotated_states.size(); ++j) {
        bool placed = false;
        for (auto &g : out.groups) {
            if (std::norm(overlap(g.rotated_state, rotated_states[j])) >= 1.0 - angle_tolerance) {
                ++g.count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            out.groups.push_back({1, rotated_states[j], weak_values[j]});
        }
    }
    return out;
}

GridWavefunction grouped_approx_cm_state(const Scenario &scenario, const WeightedWeakValueGroup &groups,
                                         Complex prefactor) {
    // Rebuild per-particle weak values from the group counts.
    std::vector<Complex> expanded;
    expanded.reserve(groups.total());
    for (const auto &g : groups.groups) {
        expanded.insert(expanded.end(), g.count, g.weak_value);
    }
    return nswm_approx_cm_state(scenario, expanded, prefactor);
}

} // namespace weakval

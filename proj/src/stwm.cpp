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

#include "integer_power.hpp"
#include "weakval/protocols.hpp"

namespace weakval {

using detail::integer_power;

StwmResult stwm_pointer_state(const Scenario &scenario) {
    scenario.validate();
    const PrePostSelection sel = scenario.selection();
    const SpinOperator op = scenario.observable_operator();
    const Complex aw = weak_value(sel, op);
    const std::size_t n = scenario.particle_count;
    const GaussianSpec spec = scenario.pointer();
    const GridSpec grid = scenario.grid.value_or(GridSpec::for_pointer(spec, scenario.lambda * std::abs(aw)));
    const GridWavefunction gauss = gaussian_on_grid(spec, grid, Representation::Position);

    // [<f|U|i>]^N = <f|i>^N (U_w)^N; the modulus |<f|i>|^N is dropped here and
    // reported as the closed-form success probability.
    const Complex base = overlap(sel.post, sel.pre);
    const Complex phase = integer_power(base / std::abs(base), n);
    const double coupling = scenario.lambda / static_cast<double>(n);
    std::vector<Complex> amp(grid.count());
    for (std::size_t j = 0; j < grid.count(); ++j) {
        const SpinOperator u = rotation_about(scenario.observable, coupling * grid.position(j));
        const Complex c = sel.post.amplitudes().dot(u.apply(sel.pre));
        amp[j] = phase * integer_power(c / base, n) * gauss[j];
    }
    const GridWavefunction pointer =
        to_momentum(GridWavefunction(grid, Representation::Position, std::move(amp)).normalized());
    const Moments m = moments(pointer);
    return {pointer, m.mean, std::sqrt(m.variance), std::pow(std::norm(base), static_cast<double>(n)), aw.real()};
}

} // namespace weakval

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

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "weakval/protocols.hpp"

namespace weakval {

IdealResult run_ideal(const Scenario &scenario) {
    scenario.validate();
    const SpinOperator op = scenario.observable_operator();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(op.matrix());
    const Eigen::Vector2d a = eig.eigenvalues();
    const double lambda = scenario.lambda;
    const GaussianSpec spec = scenario.pointer();
    const GridSpec grid = scenario.grid.value_or(GridSpec::for_pointer(spec, lambda * a.cwiseAbs().maxCoeff()));

    const GridWavefunction pointer = gaussian_on_grid(spec, grid, Representation::Position);
    const JointState out = couple(JointState::product(scenario.pre.state(), pointer), op, lambda).to_momentum();
    const std::vector<double> rho = out.density();
    const double dp = grid.momentum_step();

    IdealResult result;
    const double gap = std::abs(a(1) - a(0));
    if (lambda * gap <= 4.0 * spec.momentum_spread()) {
        std::ostringstream msg;
        msg << "not in the ideal regime: lambda * eigenvalue gap = " << lambda * gap << " <= 4 Delta P = "
            << 4.0 * spec.momentum_spread();
        result.warning = msg.str();
    }

    // Each momentum sample is assigned to the nearest peak position lambda * a_i.
    const double boundary = 0.5 * lambda * (a(0) + a(1));
    for (int i = 0; i < 2; ++i) {
        double weight = 0.0;
        double first = 0.0;
        for (std::size_t k = 0; k < grid.count(); ++k) {
            const double p = grid.momentum(k);
            const bool mine = (i == 0) ? (p < boundary) : (p >= boundary);
            if (!mine) {
                continue;
            }
            weight += rho[k] * dp;
            first += p * rho[k] * dp;
        }
        if (weight >= 1e-9) {
            result.peaks.push_back({a(i), first / weight, weight});
        }
    }
    return result;
}

} // namespace weakval

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

#include "weakval/validity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "integer_power.hpp"
#include "weakval/errors.hpp"

namespace weakval {

namespace {

void require_particles(std::size_t n) {
    if (n < 1) {
        throw ValidationError("particle count must be >= 1");
    }
}

} // namespace

GridWavefunction uniform_wv_state(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                                  const GridSpec &grid) {
    require_particles(n);
    spec.validate();
    const double coupling = lambda / std::sqrt(static_cast<double>(n));
    const double d2 = spec.spread * spec.spread;
    std::vector<Complex> s(grid.count());
    for (std::size_t j = 0; j < s.size(); ++j) {
        const double q = grid.position(j) - spec.center;
        const Complex factor(std::cos(coupling * q), alpha_w * std::sin(coupling * q));
        s[j] = detail::integer_power(factor, n) * std::exp(-q * q / (2.0 * d2));
    }
    return {grid, Representation::Position, std::move(s)};
}

std::vector<double> magnitude_profile(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                                      const GridSpec &grid) {
    require_particles(n);
    spec.validate();
    const double coupling = lambda / std::sqrt(static_cast<double>(n));
    const double d2 = spec.spread * spec.spread;
    std::vector<double> out(grid.count());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double q = grid.position(j) - spec.center;
        const double s = std::sin(coupling * q);
        const double a = std::pow(1.0 + (alpha_w * alpha_w - 1.0) * s * s, 0.5 * static_cast<double>(n));
        out[j] = a * std::exp(-q * q / (2.0 * d2));
    }
    return out;
}

GridSpec validity_grid(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec) {
    require_particles(n);
    spec.validate();
    const double d = spec.spread;
    const double rt = std::sqrt(static_cast<double>(n));
    double half = 8.0 * d;
    if (lambda > 0.0) {
        half = std::max(half, std::min(std::numbers::pi * rt / (2.0 * lambda) + 4.0 * d, 64.0 * d));
    }
    half += std::abs(spec.center);
    return GridSpec::covering(half, lambda * rt * std::abs(alpha_w) + 8.0 / d, 1024);
}

ValidityReport regime_check(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                            const GridSpec &grid) {
    const std::vector<double> profile = magnitude_profile(alpha_w, lambda, n, spec, grid);
    const auto peak = static_cast<std::size_t>(std::max_element(profile.begin(), profile.end()) - profile.begin());
    const double peak_q = grid.position(peak);

    const Moments m = moments(to_momentum(uniform_wv_state(alpha_w, lambda, n, spec, grid)));

    ValidityReport r{};
    r.regime_lhs = (alpha_w * alpha_w - 1.0) * lambda * lambda;
    r.regime_ok = r.regime_lhs < 1.0;
    r.peak_location = peak_q;
    r.peak_at_origin = std::abs(peak_q - spec.center) <= 2.0 * grid.step() + 1e-12 * grid.step();
    r.finite_n_correction = static_cast<double>(n) * lambda * lambda * lambda;
    r.sqrt_n_correction = std::sqrt(static_cast<double>(n)) * lambda * lambda * lambda;
    r.shift = m.mean;
    r.uncertainty = std::sqrt(m.variance);
    r.amplification = r.uncertainty > 0.0 ? r.shift / r.uncertainty : 0.0;
    // spin-1/2 components have eigenvalues +-1
    r.eccentric = std::abs(alpha_w) > 1.0;
    return r;
}

} // namespace weakval

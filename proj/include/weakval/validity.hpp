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
 * Validity of the weak-value approximation for N particles sharing one
 * centre-of-mass pointer, all with the same weak value alpha_w.
 *
 * The modulus of the pointer is a competition between the scalar-product
 * term A = {1 + (alpha_w^2 - 1) sin^2(lambda Q / sqrt N)}^(N/2), which grows
 * with |Q| for an eccentric alpha_w, and the pointer envelope
 * B = exp{-Q^2 / (2 Delta^2)}. The approximation holds while the product
 * stays peaked at Q = 0, i.e. (alpha_w^2 - 1) lambda^2 < 1 for large N.
 *
 * Both uniform_wv_state and magnitude_profile use the envelope B, so that
 * |uniform_wv_state| and magnitude_profile are the same function.
 */
#pragma once

#include <cstddef>
#include <vector>

#include "weakval/pointer.hpp"

namespace weakval {

struct ValidityReport {
    double regime_lhs;
    bool regime_ok;
    double peak_location;
    bool peak_at_origin;
    /// N lambda^3
    double finite_n_correction;
    /// sqrt(N) lambda^3
    double sqrt_n_correction;
    /// Momentum mean and standard deviation of uniform_wv_state.
    double shift;
    double uncertainty;
    double amplification;
    bool eccentric;
};

/// {cos(lambda Q/sqrt N) + i alpha_w sin(lambda Q/sqrt N)}^N exp{-Q^2/(2 Delta^2)},
/// with Q measured from spec.center.
GridWavefunction uniform_wv_state(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                                  const GridSpec &grid);

/// {1 + (alpha_w^2 - 1) sin^2(lambda Q/sqrt N)}^(N/2) exp{-Q^2/(2 Delta^2)}
std::vector<double> magnitude_profile(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                                      const GridSpec &grid);

/// Grid wide enough to contain the first off-origin maximum of the profile
/// (|Q| = pi sqrt(N) / (2 lambda), capped at 64 Delta) and the shifted momentum.
GridSpec validity_grid(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec);

ValidityReport regime_check(double alpha_w, double lambda, std::size_t n, const GaussianSpec &spec,
                            const GridSpec &grid);

} // namespace weakval

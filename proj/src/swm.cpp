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
#include <thread>

#include "weakval/errors.hpp"
#include "weakval/protocols.hpp"

namespace weakval {

namespace {

constexpr double kRejected = std::numeric_limits<double>::quiet_NaN();

/// Inverse-CDF sampler over a piecewise-constant density on the momentum grid.
class GridSampler {
  public:
    explicit GridSampler(const GridWavefunction &w) : grid_(w.grid()), cdf_(w.size()) {
        double acc = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            acc += std::norm(w[k]);
            cdf_[k] = acc;
        }
        total_ = acc;
    }

    /// Maps u in [0, 1) to a momentum, uniform within the selected cell.
    double operator()(double u) const {
        const double target = u * total_;
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
        const std::size_t k = std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1);
        const double lo = k == 0 ? 0.0 : cdf_[k - 1];
        const double mass = cdf_[k] - lo;
        const double frac = mass > 0.0 ? std::clamp((target - lo) / mass, 0.0, 1.0) : 0.5;
        const double dp = grid_.momentum_step();
        return grid_.momentum(k) + (frac - 0.5) * dp;
    }

  private:
    GridSpec grid_;
    std::vector<double> cdf_;
    double total_ = 0.0;
};

} // namespace

SwmResult run_swm(const Scenario &scenario, unsigned workers) {
    scenario.validate();
    if (scenario.trial_count < 1) {
        throw ValidationError("SWM needs at least one trial");
    }
    const PrePostSelection sel = scenario.selection();
    const SpinOperator op = scenario.observable_operator();
    const GaussianSpec spec = scenario.pointer();

    double expected_shift = scenario.lambda;
    if (std::abs(overlap(sel.post, sel.pre)) > kOrthogonalityThreshold) {
        expected_shift = scenario.lambda * std::max(1.0, std::abs(weak_value(sel, op).real()));
    }
    const GridSpec grid = scenario.grid.value_or(GridSpec::for_pointer(spec, expected_shift));

    // Every trial shares the same exact joint evolution; only the draws differ.
    const JointState coupled =
        couple(JointState::product(sel.pre, gaussian_on_grid(spec, grid, Representation::Position)), op,
               scenario.lambda);
    const PostSelected post = postselect(coupled, sel.post);
    const GridSampler sampler(to_momentum(post.conditional));
    const double p_accept = post.probability;

    const std::size_t trials = scenario.trial_count;
    std::vector<double> readings(trials, kRejected);
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t t = begin; t < end; ++t) {
            RandomStream rng(scenario.seed, t);
            if (rng.uniform() < p_accept) {
                readings[t] = sampler(rng.uniform());
            }
        }
    };
    const unsigned nw = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(trials)));
    if (nw == 1) {
        work(0, trials);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (trials + nw - 1) / nw;
        for (unsigned w = 0; w < nw; ++w) {
            const std::size_t b = std::min(trials, w * chunk);
            const std::size_t e = std::min(trials, b + chunk);
            pool.emplace_back(work, b, e);
        }
        for (auto &th : pool) {
            th.join();
        }
    }

    // Reduction in ascending trial order.
    SwmResult r;
    for (double x : readings) {
        if (!std::isnan(x)) {
            r.accepted_readings.push_back(x);
        }
    }
    const std::size_t n = r.accepted_readings.size();
    if (n == 0) {
        throw NoPostSelectionsError("no post-selections among " + std::to_string(trials) + " trials");
    }
    double sum = 0.0;
    for (double x : r.accepted_readings) {
        sum += x;
    }
    const double mean = sum / static_cast<double>(n);
    double ss = 0.0;
    for (double x : r.accepted_readings) {
        ss += (x - mean) * (x - mean);
    }
    const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;

    r.acceptance_rate = static_cast<double>(n) / static_cast<double>(trials);
    r.mean_shift = mean;
    r.standard_error = sd / std::sqrt(static_cast<double>(n));
    r.estimated_weak_value = scenario.lambda > 0.0 ? mean / scenario.lambda : std::numeric_limits<double>::quiet_NaN();
    r.postselection_probability = p_accept;
    return r;
}

} // namespace weakval

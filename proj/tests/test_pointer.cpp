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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "weakval/errors.hpp"
#include "weakval/pointer.hpp"

using namespace weakval;
using oracle::Complex;

namespace {

const double kSqrt2 = std::numbers::sqrt2;
const double kPi = std::numbers::pi;
const SpinOperator kSigma45 = spin_along(BlochAxis::in_xy_plane(45.0));

SpinState up_x() { return eigenstate(BlochAxis::x(), +1); }
SpinState up_y() { return eigenstate(BlochAxis::y(), +1); }

double max_abs_diff(const GridWavefunction &a, const GridWavefunction &b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

/// Exact single-particle conditional pointer amplitude <post| exp{i lambda Q A} |pre> g(Q).
PostSelected exact_conditional(const PrePostSelection &sel, const SpinOperator &op, double lambda,
                               const GaussianSpec &spec, const GridSpec &grid) {
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    return postselect(couple(JointState::product(sel.pre, g), op, lambda), sel.post);
}

} // namespace

TEST_CASE("grid construction") {
    CHECK_THROWS_AS(GridSpec(0.0, 0.1, 100), ValidationError);
    CHECK_THROWS_AS(GridSpec(0.0, 0.1, 32), ValidationError);
    CHECK_THROWS_AS(GridSpec(0.0, -0.1, 64), ValidationError);

    const GridSpec c = GridSpec::centered(0.05, 256);
    CHECK(c.position(128) == 0.0);
    CHECK(c.momentum_step() == doctest::Approx(2 * kPi / (256 * 0.05)));
    CHECK(c.momentum(128) == 0.0);

    const GaussianSpec spec{0.0, 1.0};
    const GridSpec g = GridSpec::for_pointer(spec, 2.0);
    CHECK(g.count() >= 512);
    CHECK(g.step() * static_cast<double>(g.count()) >= 16.0 + 4.0 * 2.0);
    CHECK(g.max_momentum() >= 2.0 + 8.0 * spec.momentum_spread());
}

TEST_CASE("gaussian_on_grid moments") {
    const GaussianSpec spec{0.0, 1.0};
    const GridSpec grid = GridSpec::for_pointer(spec, 0.0);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    const Moments m = moments(g);
    CHECK(m.norm2 == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(m.mean) < 1e-12);
    CHECK(m.variance == doctest::Approx(1.0).epsilon(1e-9));

    const Moments mp = moments(to_momentum(g));
    CHECK(mp.variance == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(std::abs(mp.mean) < 1e-12);

    // independent quadrature of the analytic density with Delta = 2
    const GaussianSpec wide{0.0, 2.0};
    const GridWavefunction w = gaussian_on_grid(wide, GridSpec::for_pointer(wide, 0.0), Representation::Position);
    const double ref = oracle::simpson(
        [](double q) { return q * q * std::exp(-q * q / 8.0) / std::sqrt(8.0 * kPi); }, -40.0, 40.0);
    CHECK(moments(w).variance == doctest::Approx(ref).epsilon(1e-6));
    CHECK(moments(w).variance == doctest::Approx(4.0).epsilon(1e-6));

    CHECK_THROWS_AS(gaussian_on_grid(spec, GridSpec::centered(0.01, 64), Representation::Position), ValidationError);
    CHECK_THROWS_AS((GaussianSpec{0.0, 0.0}.validate()), ValidationError);
}

TEST_CASE("momentum representation of the Gaussian is the analytic pair") {
    const GaussianSpec spec{0.7, 1.0};
    const GridSpec grid = GridSpec::for_pointer(spec, 0.0);
    const GridWavefunction fft = to_momentum(gaussian_on_grid(spec, grid, Representation::Position));
    const GridWavefunction analytic = gaussian_on_grid(spec, grid, Representation::Momentum);
    CHECK(max_abs_diff(fft, analytic) < 1e-10);
    CHECK(std::sqrt(moments(fft).variance) == doctest::Approx(spec.momentum_spread()).epsilon(1e-9));
}

TEST_CASE("transform matches a direct Fourier sum") {
    const GridSpec grid(-6.3, 12.0 / 128, 128);
    std::vector<Complex> psi(grid.count());
    std::vector<double> q(grid.count()), p(grid.count());
    std::mt19937_64 rng(1);
    std::normal_distribution<double> n;
    for (std::size_t j = 0; j < grid.count(); ++j) {
        q[j] = grid.position(j);
        p[j] = grid.momentum(j);
        psi[j] = Complex(n(rng), n(rng)) * std::exp(-q[j] * q[j] / 4.0);
    }
    const GridWavefunction w(grid, Representation::Position, psi);
    const GridWavefunction fft = to_momentum(w);
    const auto ref = oracle::direct_ft(psi, q, p, grid.step());
    double err = 0.0;
    for (std::size_t k = 0; k < ref.size(); ++k) {
        err = std::max(err, std::abs(fft[k] - ref[k]));
    }
    CHECK(err < 1e-12);

    const GridWavefunction back = to_position(fft);
    CHECK(max_abs_diff(back, w) < 1e-12);
    CHECK(fft.norm2() == doctest::Approx(w.norm2()).epsilon(1e-12));
}

TEST_CASE("position shift multiplies momentum samples by a phase") {
    const GridSpec grid = GridSpec::for_pointer({0.0, 1.0}, 0.0);
    const double s = 1.25;
    const GridWavefunction a = to_momentum(gaussian_on_grid({0.0, 1.0}, grid, Representation::Position));
    const GridWavefunction b = to_momentum(gaussian_on_grid({s, 1.0}, grid, Representation::Position));
    double err = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        err = std::max(err, std::abs(b[k] - a[k] * std::polar(1.0, -grid.momentum(k) * s)));
        err = std::max(err, std::abs(std::abs(b[k]) - std::abs(a[k])));
    }
    CHECK(err < 1e-10);
}

TEST_CASE("moments of a displaced momentum Gaussian") {
    const GridSpec grid = GridSpec::for_pointer({0.0, 1.0}, 0.2);
    std::vector<Complex> s(grid.count());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const double p = grid.momentum(k) - 0.1 * kSqrt2;
        s[k] = std::exp(-p * p);
    }
    const Moments m = moments(GridWavefunction(grid, Representation::Momentum, s));
    CHECK(m.mean == doctest::Approx(0.1 * kSqrt2).epsilon(1e-6));

    std::vector<Complex> zero(grid.count(), 0.0);
    CHECK_THROWS_AS(moments(GridWavefunction(grid, Representation::Momentum, zero)), EmptyStateError);
    CHECK_THROWS_AS(GridWavefunction(grid, Representation::Momentum, zero).normalized(), EmptyStateError);
}

TEST_CASE("couple and postselect") {
    const GaussianSpec spec{0.0, 1.0};
    const GridSpec grid = GridSpec::for_pointer(spec, 1.0);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);

    SUBCASE("lambda zero is the identity") {
        const JointState j = JointState::product(up_x(), g);
        const JointState k = couple(j, kSigma45, 0.0);
        for (std::size_t i = 0; i < grid.count(); ++i) {
            CHECK(std::abs(k.up()[i] - j.up()[i]) < 1e-15);
            CHECK(std::abs(k.down()[i] - j.down()[i]) < 1e-15);
        }
        const PostSelected ps = postselect(k, up_y());
        CHECK(ps.probability == doctest::Approx(0.5).epsilon(1e-12));
        CHECK(fidelity(ps.conditional, g) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(postselect(k, up_x()).probability == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("eigenstate gives a rigid momentum shift") {
        const double lambda = 0.7;
        const JointState j = couple(JointState::product(eigenstate(BlochAxis::z(), 1), g), pauli(PauliAxis::Z), lambda);
        const PostSelected ps = postselect(j, eigenstate(BlochAxis::z(), 1));
        CHECK(moments(to_momentum(ps.conditional)).mean == doctest::Approx(lambda).epsilon(1e-10));
    }

    SUBCASE("weak coupling with the eccentric selection") {
        const PostSelected ps = exact_conditional({up_x(), up_y()}, kSigma45, 0.1, spec, grid);
        CHECK(moments(to_momentum(ps.conditional)).mean == doctest::Approx(0.1 * kSqrt2).epsilon(0.02));
        CHECK(ps.probability == doctest::Approx(0.5).epsilon(0.01));
    }

    SUBCASE("null post-selection") {
        const JointState j = JointState::product(eigenstate(BlochAxis::z(), 1), g);
        CHECK_THROWS_AS(postselect(j, eigenstate(BlochAxis::z(), -1)), NullPostSelectionError);
        CHECK_THROWS_AS(postselect(j, eigenstate(BlochAxis::z(), -1)), SimulationError);
    }

    SUBCASE("couple rejects non-Hermitian operators and momentum input") {
        const JointState j = JointState::product(up_x(), g);
        CHECK_THROWS_AS(couple(j, SpinOperator((Eigen::Matrix2cd() << 0, 1, 0, 0).finished()), 0.1),
                        ValidationError);
        CHECK_THROWS_AS(couple(j.to_momentum(), kSigma45, 0.1), ValidationError);
    }
}

TEST_CASE("weak_approx_pointer") {
    const GaussianSpec spec{0.0, 1.0};
    const GridSpec grid = GridSpec::for_pointer(spec, 1.0);
    const PrePostSelection sel{up_x(), up_y()};

    const GridWavefunction w = weak_approx_pointer(sel, kSigma45, 0.1, spec, grid);
    CHECK(moments(w).mean == doctest::Approx(0.1 * kSqrt2).epsilon(1e-9));
    CHECK(w.representation() == Representation::Momentum);

    const GridWavefunction w0 = weak_approx_pointer(sel, kSigma45, 0.0, spec, grid);
    CHECK(fidelity(w0, gaussian_on_grid(spec, grid, Representation::Momentum)) == doctest::Approx(1.0).epsilon(1e-12));

    const PostSelected exact = exact_conditional(sel, kSigma45, 0.05, spec, grid);
    CHECK(l2_error(weak_approx_pointer(sel, kSigma45, 0.05, spec, grid), to_momentum(exact.amplitude())) <= 0.02);
}

TEST_CASE("fidelity and l2_error") {
    const GaussianSpec spec{0.0, 1.0};
    const GridSpec grid = GridSpec::for_pointer(spec, 0.0);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    CHECK(fidelity(g, g) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(fidelity(g, g.scaled(std::polar(2.0, 0.7))) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(l2_error(g, g) == 0.0);
    CHECK(l2_error(g.scaled(1.1), g) == doctest::Approx(0.1).epsilon(1e-12));
    const GridWavefunction other = gaussian_on_grid(spec, GridSpec::for_pointer(spec, 0.0, 2048), Representation::Position);
    CHECK_THROWS_AS(l2_error(g, other), ValidationError);
}

TEST_CASE("write_csv") {
    const GridSpec grid = GridSpec::centered(0.25, 64);
    std::vector<Complex> s(64, Complex(1.0 / 3.0, -2.0 / 3.0));
    std::ostringstream os;
    write_csv(os, GridWavefunction(grid, Representation::Position, s));
    std::istringstream in(os.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,re,im");
    std::getline(in, line);
    CHECK(line == "-8,0.333333333333333,-0.666666666666667");
    int rows = 1;
    while (std::getline(in, line)) {
        ++rows;
    }
    CHECK(rows == 64);
}

TEST_CASE("property: coupling is unitary") {
    const GaussianSpec spec{0.0, 1.0};
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.0, 5.0);
    const GridSpec grid = GridSpec::for_pointer(spec, 5.0);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    for (int i = 0; i < 20; ++i) {
        const JointState j = JointState::product(oracle::random_state(rng), g);
        const JointState k = couple(j, spin_along(oracle::random_axis(rng)), u(rng));
        CHECK(k.norm2() == doctest::Approx(j.norm2()).epsilon(1e-10));
    }
}

TEST_CASE("property: post-selection probabilities over a basis sum to one") {
    const GaussianSpec spec{0.0, 1.0};
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    const GridSpec grid = GridSpec::for_pointer(spec, 3.0);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    for (int i = 0; i < 20; ++i) {
        const JointState k = couple(JointState::product(oracle::random_state(rng), g),
                                    spin_along(oracle::random_axis(rng)), u(rng));
        const BlochAxis b = oracle::random_axis(rng);
        const double total = postselect(k, eigenstate(b, 1)).probability + postselect(k, eigenstate(b, -1)).probability;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("property: strong measurement separates eigenvalue peaks") {
    const GaussianSpec spec{0.0, 1.0};
    const double lambda = 20.0;
    const GridSpec grid = GridSpec::for_pointer(spec, lambda);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);

    auto peaks = [&](const SpinOperator &op) {
        const std::vector<double> d =
            couple(JointState::product(up_x(), g), op, lambda).to_momentum().density();
        double w_plus = 0.0, w_minus = 0.0;
        std::size_t arg_plus = 0, arg_minus = 0;
        for (std::size_t k = 0; k < d.size(); ++k) {
            const double p = grid.momentum(k);
            if (p > 0) {
                w_plus += d[k] * grid.momentum_step();
                if (d[k] > d[arg_plus]) arg_plus = k;
            } else {
                w_minus += d[k] * grid.momentum_step();
                if (d[k] > d[arg_minus]) arg_minus = k;
            }
        }
        return std::array<double, 4>{w_plus, w_minus, grid.momentum(arg_plus), grid.momentum(arg_minus)};
    };

    const auto z = peaks(pauli(PauliAxis::Z));
    CHECK(z[0] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(z[1] == doctest::Approx(0.5).epsilon(0.02));
    CHECK(std::abs(z[2] - lambda) <= grid.momentum_step());
    CHECK(std::abs(z[3] + lambda) <= grid.momentum_step());

    // sigma_45 splits by projection onto its eigenstates
    const auto s = peaks(kSigma45);
    const double c2 = std::pow(std::cos(kPi / 8), 2);
    CHECK(s[0] == doctest::Approx(c2).epsilon(1e-6));
    CHECK(s[1] == doctest::Approx(1 - c2).epsilon(1e-6));
    CHECK(std::abs(s[2] - lambda) <= grid.momentum_step());
    CHECK(std::abs(s[3] + lambda) <= grid.momentum_step());
}

TEST_CASE("property: weak regime is unimodal with mean lambda <A>") {
    const GaussianSpec spec{0.0, 1.0};
    const double lambda = 0.05;
    const GridSpec grid = GridSpec::for_pointer(spec, lambda);
    const GridWavefunction g = gaussian_on_grid(spec, grid, Representation::Position);
    const std::vector<double> d = couple(JointState::product(up_x(), g), kSigma45, lambda).to_momentum().density();
    int maxima = 0;
    double mean = 0.0;
    for (std::size_t k = 1; k + 1 < d.size(); ++k) {
        if (d[k] > d[k - 1] && d[k] >= d[k + 1] && d[k] > 1e-8) {
            ++maxima;
        }
        mean += grid.momentum(k) * d[k] * grid.momentum_step();
    }
    CHECK(maxima == 1);
    CHECK(std::abs(mean - lambda / kSqrt2) < 1e-3);
}

TEST_CASE("property: weak-value error shrinks with the coupling") {
    const GaussianSpec spec{0.0, 1.0};
    const PrePostSelection sel{up_x(), up_y()};
    double previous = std::numeric_limits<double>::infinity();
    for (double lambda : {0.4, 0.2, 0.1, 0.05}) {
        const GridSpec grid = GridSpec::for_pointer(spec, 1.0);
        const PostSelected exact = exact_conditional(sel, kSigma45, lambda, spec, grid);
        const double err = l2_error(weak_approx_pointer(sel, kSigma45, lambda, spec, grid), to_momentum(exact.amplitude()));
        CHECK(err < previous);
        previous = err;
    }
}

TEST_CASE("property: grid evolution matches the per-particle amplitude formula") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    const GaussianSpec spec{0.0, 1.0};
    for (int i = 0; i < 20; ++i) {
        const double lambda = u(rng);
        const BlochAxis n = oracle::random_axis(rng);
        const PrePostSelection sel{eigenstate(oracle::random_axis(rng), 1), eigenstate(oracle::random_axis(rng), 1)};
        const GridSpec grid = GridSpec::for_pointer(spec, 2.0);
        const GridWavefunction amp = exact_conditional(sel, spin_along(n), lambda, spec, grid).amplitude();
        const Eigen::Matrix2cd a = oracle::n_dot_sigma(n.nx(), n.ny(), n.nz());
        double err = 0.0;
        for (std::size_t j = 0; j < grid.count(); ++j) {
            const double q = grid.position(j);
            const Complex f = oracle::braket(sel.post.amplitudes(), oracle::expm(Complex(0, lambda * q) * a),
                                             sel.pre.amplitudes());
            const Complex g = std::exp(-q * q / 4.0) / std::pow(2 * kPi, 0.25);
            err = std::max(err, std::abs(amp[j] - f * g));
        }
        CHECK(err < 1e-8);
    }
}

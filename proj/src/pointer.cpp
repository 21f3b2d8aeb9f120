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

#include "weakval/pointer.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>

#include "fourier.hpp"
#include "weakval/errors.hpp"
#include "weakval/format.hpp"

namespace weakval {

namespace {

constexpr double kPi = std::numbers::pi;

void require_same_grid(const GridWavefunction &a, const GridWavefunction &b, const char *what) {
    if (!(a.grid() == b.grid()) || a.representation() != b.representation()) {
        throw ValidationError(std::string(what) + ": wavefunctions live on different grids or representations");
    }
}

double sum_norm2(std::span<const Complex> v) {
    double s = 0.0;
    for (const Complex &c : v) {
        s += std::norm(c);
    }
    return s;
}

} // namespace

void GaussianSpec::validate() const {
    if (!(spread > 0.0) || !std::isfinite(spread) || !std::isfinite(center)) {
        throw ValidationError("Gaussian pointer spread must be positive and finite");
    }
}

GridSpec::GridSpec(double origin, double step, std::size_t count) : origin_(origin), step_(step), count_(count) {
    if (!(step > 0.0) || !std::isfinite(step) || !std::isfinite(origin)) {
        throw ValidationError("grid step must be positive and finite");
    }
    if (count < 64 || !std::has_single_bit(count)) {
        throw ValidationError("grid count must be a power of two >= 64 (got " + std::to_string(count) + ")");
    }
}

GridSpec GridSpec::centered(double step, std::size_t count) {
    return {-static_cast<double>(count / 2) * step, step, count};
}

GridSpec GridSpec::covering(double half_extent, double max_momentum, std::size_t min_count) {
    if (!(half_extent > 0.0) || !(max_momentum > 0.0)) {
        throw ValidationError("grid extent and momentum range must be positive");
    }
    min_count = std::bit_ceil(std::max<std::size_t>(min_count, 64));
    const double step = std::min(2.0 * half_extent / static_cast<double>(min_count), kPi / max_momentum);
    const auto needed = static_cast<std::size_t>(std::ceil(2.0 * half_extent / step)) + 2;
    return centered(step, std::bit_ceil(std::max(min_count, needed)));
}

GridSpec GridSpec::for_pointer(const GaussianSpec &spec, double max_shift, std::size_t min_count) {
    spec.validate();
    const double shift = std::abs(max_shift);
    // Balanced choice: position and momentum Gaussians equally resolved.
    const double balanced = 0.5 * spec.spread * std::sqrt(2.0 * kPi * static_cast<double>(min_count));
    const double half = std::max(8.0 * spec.spread + 2.0 * shift + std::abs(spec.center), balanced);
    return covering(half, shift + 8.0 * spec.momentum_spread(), min_count);
}

double GridSpec::momentum_step() const { return 2.0 * kPi / (static_cast<double>(count_) * step_); }

double GridSpec::momentum(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(count_ / 2)) * momentum_step();
}

GridWavefunction::GridWavefunction(GridSpec grid, Representation rep, std::vector<Complex> samples)
    : grid_(grid), rep_(rep), samples_(std::move(samples)) {
    if (samples_.size() != grid_.count()) {
        throw ValidationError("wavefunction sample count does not match its grid");
    }
}

double GridWavefunction::norm2() const { return sum_norm2(samples_) * measure(); }

GridWavefunction GridWavefunction::normalized() const {
    const double n2 = norm2();
    if (!(n2 >= 1e-12)) {
        throw EmptyStateError("cannot normalize an empty state (norm^2 < 1e-12)");
    }
    return scaled(1.0 / std::sqrt(n2));
}

GridWavefunction GridWavefunction::scaled(Complex factor) const {
    std::vector<Complex> out(samples_);
    for (Complex &c : out) {
        c *= factor;
    }
    return {grid_, rep_, std::move(out)};
}

JointState::JointState(GridSpec grid, Representation rep, std::vector<Complex> up, std::vector<Complex> down)
    : grid_(grid), rep_(rep), up_(std::move(up)), down_(std::move(down)) {
    if (up_.size() != grid_.count() || down_.size() != grid_.count()) {
        throw ValidationError("joint state component length does not match its grid");
    }
}

JointState JointState::product(const SpinState &spin, const GridWavefunction &pointer) {
    std::vector<Complex> up(pointer.size()), down(pointer.size());
    for (std::size_t i = 0; i < pointer.size(); ++i) {
        up[i] = spin.up() * pointer[i];
        down[i] = spin.down() * pointer[i];
    }
    return {pointer.grid(), pointer.representation(), std::move(up), std::move(down)};
}

double JointState::norm2() const { return (sum_norm2(up_) + sum_norm2(down_)) * grid_.measure(rep_); }

std::vector<double> JointState::density() const {
    std::vector<double> d(up_.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        d[i] = std::norm(up_[i]) + std::norm(down_[i]);
    }
    return d;
}

JointState JointState::to_momentum() const {
    const GridWavefunction u = weakval::to_momentum({grid_, rep_, up_});
    const GridWavefunction d = weakval::to_momentum({grid_, rep_, down_});
    return {grid_, Representation::Momentum, {u.samples().begin(), u.samples().end()},
            {d.samples().begin(), d.samples().end()}};
}

GridWavefunction gaussian_on_grid(const GaussianSpec &spec, const GridSpec &grid, Representation rep) {
    spec.validate();
    const double lo = spec.center - 8.0 * spec.spread;
    const double hi = spec.center + 8.0 * spec.spread;
    const double pmax = 8.0 * spec.momentum_spread();
    if (lo < grid.min_position() || hi > grid.max_position() || pmax > grid.max_momentum()) {
        std::ostringstream msg;
        msg << "grid does not cover the Gaussian: need positions [" << lo << ", " << hi << "] and momenta +-"
            << pmax << ", grid has [" << grid.min_position() << ", " << grid.max_position() << "] and +-"
            << grid.max_momentum();
        throw ValidationError(msg.str());
    }
    const double d = spec.spread;
    std::vector<Complex> s(grid.count());
    if (rep == Representation::Position) {
        const double amp = std::pow(2.0 * kPi * d * d, -0.25);
        for (std::size_t j = 0; j < s.size(); ++j) {
            const double x = grid.position(j) - spec.center;
            s[j] = amp * std::exp(-x * x / (4.0 * d * d));
        }
    } else {
        const double amp = std::pow(2.0 * d * d / kPi, 0.25);
        for (std::size_t k = 0; k < s.size(); ++k) {
            const double p = grid.momentum(k);
            s[k] = amp * std::exp(Complex(-d * d * p * p, -p * spec.center));
        }
    }
    return {grid, rep, std::move(s)};
}

GridWavefunction to_momentum(const GridWavefunction &w) {
    if (w.representation() != Representation::Position) {
        throw ValidationError("to_momentum expects a position-representation wavefunction");
    }
    const GridSpec &g = w.grid();
    const std::size_t n = g.count();
    std::vector<Complex> alt(w.samples().begin(), w.samples().end());
    for (std::size_t j = 1; j < n; j += 2) {
        alt[j] = -alt[j];
    }
    std::vector<Complex> out = detail::dft(alt, -1);
    const double scale = g.step() / std::sqrt(2.0 * kPi);
    for (std::size_t k = 0; k < n; ++k) {
        out[k] *= scale * std::exp(Complex(0.0, -g.momentum(k) * g.origin()));
    }
    return {g, Representation::Momentum, std::move(out)};
}

GridWavefunction to_position(const GridWavefunction &w) {
    if (w.representation() != Representation::Momentum) {
        throw ValidationError("to_position expects a momentum-representation wavefunction");
    }
    const GridSpec &g = w.grid();
    const std::size_t n = g.count();
    std::vector<Complex> in(n);
    for (std::size_t k = 0; k < n; ++k) {
        in[k] = w[k] * std::exp(Complex(0.0, g.momentum(k) * g.origin()));
    }
    std::vector<Complex> out = detail::dft(in, +1);
    const double scale = g.momentum_step() / std::sqrt(2.0 * kPi);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] *= (j % 2 == 0) ? scale : -scale;
    }
    return {g, Representation::Position, std::move(out)};
}

Moments moments(const GridWavefunction &w) {
    const double h = w.measure();
    double n2 = 0.0, first = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double rho = std::norm(w[i]);
        n2 += rho;
        first += rho * w.coordinate(i);
    }
    n2 *= h;
    if (!(n2 >= 1e-12)) {
        throw EmptyStateError("empty state: norm^2 < 1e-12");
    }
    const double mean = first * h / n2;
    double second = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        const double dx = w.coordinate(i) - mean;
        second += std::norm(w[i]) * dx * dx;
    }
    return {n2, mean, second * h / n2};
}

JointState couple(const JointState &joint, const SpinOperator &op, double lambda) {
    if (joint.representation() != Representation::Position) {
        throw ValidationError("couple expects a position-representation joint state");
    }
    if (!op.is_hermitian()) {
        throw ValidationError("couple: observable is not Hermitian");
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(op.matrix());
    const Eigen::Matrix2cd &v = eig.eigenvectors();
    const Eigen::Vector2d a = eig.eigenvalues();
    const GridSpec &g = joint.grid();
    std::vector<Complex> up(g.count()), down(g.count());
    for (std::size_t j = 0; j < g.count(); ++j) {
        const double q = g.position(j);
        const Eigen::Vector2cd phases(std::exp(Complex(0.0, lambda * q * a(0))),
                                      std::exp(Complex(0.0, lambda * q * a(1))));
        const Eigen::Vector2cd in(joint.up()[j], joint.down()[j]);
        const Eigen::Vector2cd out = v * phases.cwiseProduct(v.adjoint() * in);
        up[j] = out(0);
        down[j] = out(1);
    }
    return {g, Representation::Position, std::move(up), std::move(down)};
}

GridWavefunction PostSelected::amplitude() const { return conditional.scaled(std::sqrt(probability)); }

PostSelected postselect(const JointState &joint, const SpinState &post) {
    const Complex bu = std::conj(post.up());
    const Complex bd = std::conj(post.down());
    std::vector<Complex> cond(joint.grid().count());
    for (std::size_t i = 0; i < cond.size(); ++i) {
        cond[i] = bu * joint.up()[i] + bd * joint.down()[i];
    }
    GridWavefunction w(joint.grid(), joint.representation(), std::move(cond));
    const double prob = w.norm2();
    if (!(prob >= 1e-14)) {
        throw NullPostSelectionError("null post-selection: probability below 1e-14");
    }
    return {w.scaled(1.0 / std::sqrt(prob)), prob};
}

GridWavefunction weak_approx_pointer(const PrePostSelection &sel, const SpinOperator &op, double lambda,
                                     const GaussianSpec &spec, const GridSpec &grid) {
    spec.validate();
    const Complex aw = weak_value(sel, op);
    const Complex prefactor = overlap(sel.post, sel.pre);
    const double pmax = std::abs(lambda * aw.real()) + 8.0 * spec.momentum_spread();
    if (spec.center - 8.0 * spec.spread < grid.min_position() || spec.center + 8.0 * spec.spread > grid.max_position() ||
        pmax > grid.max_momentum()) {
        throw ValidationError("grid does not cover the shifted weak-value pointer");
    }
    const double d = spec.spread;
    const double amp = std::pow(2.0 * d * d / kPi, 0.25);
    std::vector<Complex> s(grid.count());
    for (std::size_t k = 0; k < s.size(); ++k) {
        const Complex dp = grid.momentum(k) - lambda * aw;
        s[k] = prefactor * amp * std::exp(-d * d * dp * dp - Complex(0.0, 1.0) * dp * spec.center);
    }
    return {grid, Representation::Momentum, std::move(s)};
}

double fidelity(const GridWavefunction &a, const GridWavefunction &b) {
    require_same_grid(a, b, "fidelity");
    Complex dot = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += std::conj(a[i]) * b[i];
    }
    const double na = sum_norm2(a.samples());
    const double nb = sum_norm2(b.samples());
    if (!(na > 0.0) || !(nb > 0.0)) {
        throw EmptyStateError("fidelity of an empty state");
    }
    return std::abs(dot) / std::sqrt(na * nb);
}

double l2_error(const GridWavefunction &a, const GridWavefunction &b) {
    require_same_grid(a, b, "l2_error");
    double diff = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        diff += std::norm(a[i] - b[i]);
    }
    const double nb = sum_norm2(b.samples());
    if (!(nb > 0.0)) {
        throw EmptyStateError("l2_error against an empty reference state");
    }
    return std::sqrt(diff / nb);
}

void write_csv(std::ostream &out, const GridWavefunction &w) {
    out << "x,re,im\n";
    for (std::size_t i = 0; i < w.size(); ++i) {
        out << format_number(w.coordinate(i)) << ',' << format_number(w[i].real()) << ','
            << format_number(w[i].imag()) << '\n';
    }
}

} // namespace weakval

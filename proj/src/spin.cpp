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

#include "weakval/spin.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "weakval/errors.hpp"

namespace weakval {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_hermitian(const SpinOperator &op, const char *what) {
    if (!op.is_hermitian()) {
        throw ValidationError(std::string(what) + ": observable is not Hermitian");
    }
}

} // namespace

BlochAxis::BlochAxis(double nx, double ny, double nz) : nx_(nx), ny_(ny), nz_(nz) {
    const double n2 = nx * nx + ny * ny + nz * nz;
    if (!std::isfinite(n2) || std::abs(n2 - 1.0) > 1e-12) {
        throw ValidationError("Bloch axis must be a unit vector (|n|^2 = " + std::to_string(n2) + ")");
    }
}

BlochAxis BlochAxis::normalized(double nx, double ny, double nz) {
    const double n = std::sqrt(nx * nx + ny * ny + nz * nz);
    if (!std::isfinite(n) || n < 1e-300) {
        throw ValidationError("Bloch axis direction must be a nonzero finite vector");
    }
    return {nx / n, ny / n, nz / n};
}

BlochAxis BlochAxis::in_xy_plane(double degrees) {
    const double rad = degrees * std::numbers::pi / 180.0;
    return normalized(std::cos(rad), std::sin(rad), 0.0);
}

SpinState::SpinState(Complex up, Complex down) : SpinState(Eigen::Vector2cd(up, down)) {}

SpinState::SpinState(const Eigen::Vector2cd &amplitudes) {
    const double n = amplitudes.norm();
    if (!std::isfinite(n) || n < 1e-300) {
        throw ValidationError("spin state amplitudes must be a nonzero finite vector");
    }
    amps_ = amplitudes / n;
}

SpinState SpinState::with_canonical_phase() const {
    const int lead = std::abs(amps_(0)) > 1e-12 ? 0 : 1;
    const Complex phase = std::conj(amps_(lead)) / std::abs(amps_(lead));
    Eigen::Vector2cd v = amps_ * phase;
    v(lead) = std::abs(amps_(lead));
    return SpinState(v);
}

bool SpinOperator::is_hermitian(double tol) const { return (m_ - m_.adjoint()).norm() <= tol; }

bool SpinOperator::is_unitary(double tol) const {
    return (m_.adjoint() * m_ - Eigen::Matrix2cd::Identity()).norm() <= tol;
}

SpinOperator SpinOperator::pow(unsigned n) const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Identity();
    for (unsigned k = 0; k < n; ++k) {
        out = out * m_;
    }
    return SpinOperator(out);
}

SpinOperator pauli(PauliAxis axis) {
    Eigen::Matrix2cd m;
    switch (axis) {
    case PauliAxis::X:
        m << 0.0, 1.0, 1.0, 0.0;
        break;
    case PauliAxis::Y:
        m << 0.0, -kI, kI, 0.0;
        break;
    case PauliAxis::Z:
        m << 1.0, 0.0, 0.0, -1.0;
        break;
    }
    return SpinOperator(m);
}

SpinOperator spin_along(const BlochAxis &axis) {
    Eigen::Matrix2cd m;
    m << axis.nz(), Complex(axis.nx(), -axis.ny()), Complex(axis.nx(), axis.ny()), -axis.nz();
    return SpinOperator(m);
}

SpinState eigenstate(const BlochAxis &axis, int sign) {
    if (sign != 1 && sign != -1) {
        throw ValidationError("eigenstate sign must be +1 or -1");
    }
    const double s = sign;
    // Two null vectors of (n.sigma - s), one from each row; take the better conditioned.
    const Eigen::Vector2cd a(axis.nz() + s, Complex(axis.nx(), axis.ny()));
    const Eigen::Vector2cd b(Complex(axis.nx(), -axis.ny()), s - axis.nz());
    return SpinState(a.norm() >= b.norm() ? a : b).with_canonical_phase();
}

Complex overlap(const SpinState &bra, const SpinState &ket) { return bra.amplitudes().dot(ket.amplitudes()); }

Complex weak_value(const PrePostSelection &sel, const SpinOperator &op) { return weak_value_moment(sel, op, 1); }

Complex weak_value_moment(const PrePostSelection &sel, const SpinOperator &op, unsigned n) {
    const Complex denom = overlap(sel.post, sel.pre);
    if (std::abs(denom) <= kOrthogonalityThreshold) {
        throw OrthogonalSelectionError("orthogonal selection: <post|pre> vanishes, weak value undefined");
    }
    const Eigen::Vector2cd an_pre = op.pow(n).apply(sel.pre);
    return sel.post.amplitudes().dot(an_pre) / denom;
}

double expectation(const SpinState &state, const SpinOperator &op) {
    require_hermitian(op, "expectation");
    return state.amplitudes().dot(op.apply(state)).real();
}

OrthogonalDecomposition orthogonal_decomposition(const SpinState &state, const SpinOperator &op) {
    require_hermitian(op, "orthogonal_decomposition");
    const Eigen::Vector2cd a_psi = op.apply(state);
    const double mean = state.amplitudes().dot(a_psi).real();
    const Eigen::Vector2cd residual = a_psi - mean * state.amplitudes();
    // |(A - mean)psi| is exactly the spread.
    const double spread = residual.norm();
    if (spread < 1e-12) {
        return {mean, spread, std::nullopt};
    }
    return {mean, spread, SpinState(residual)};
}

SpinOperator rotation_about(const BlochAxis &axis, double angle) {
    return SpinOperator(std::cos(angle) * Eigen::Matrix2cd::Identity() +
                        kI * std::sin(angle) * spin_along(axis).matrix());
}

std::vector<DecompositionTerm> post_selected_decomposition(const SpinState &pre, const SpinOperator &op,
                                                           const SpinState &basis0, const SpinState &basis1) {
    require_hermitian(op, "post_selected_decomposition");
    if (std::abs(overlap(basis0, basis1)) > 1e-10) {
        throw ValidationError("post-selection basis is not orthonormal");
    }
    std::vector<DecompositionTerm> terms;
    for (const SpinState *b : {&basis0, &basis1}) {
        const Complex amp = overlap(*b, pre);
        const double prob = std::norm(amp);
        if (std::abs(amp) <= kOrthogonalityThreshold) {
            terms.push_back({prob, std::nullopt});
        } else {
            terms.push_back({prob, weak_value({pre, *b}, op)});
        }
    }
    return terms;
}

} // namespace weakval

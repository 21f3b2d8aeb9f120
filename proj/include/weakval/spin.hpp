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
 * Exact 2x2 algebra for spin-1/2 states and observables: Pauli matrices,
 * spin components along Bloch axes, rotations, expectation values and weak
 * values of pre- and post-selected systems.
 *
 * Conventions: hbar = 1, states are written in the sigma_z basis
 * (component 0 = up, component 1 = down), and rotation_about(n, a) is
 * exp{+i a n.sigma}, matching the coupling exp{+i lambda Q A}.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace weakval {

using Complex = std::complex<double>;

/// Overlaps with modulus at or below this are treated as orthogonal.
inline constexpr double kOrthogonalityThreshold = 1e-12;

enum class PauliAxis { X, Y, Z };

/// Unit vector on the Bloch sphere.
class BlochAxis {
  public:
    /// Throws ValidationError unless nx^2 + ny^2 + nz^2 = 1 within 1e-12.
    BlochAxis(double nx, double ny, double nz);

    /// Rescales an arbitrary nonzero vector to unit length.
    static BlochAxis normalized(double nx, double ny, double nz);
    /// Axis in the x-y plane at the given angle from x, in degrees.
    static BlochAxis in_xy_plane(double degrees);
    static BlochAxis x() { return {1.0, 0.0, 0.0}; }
    static BlochAxis y() { return {0.0, 1.0, 0.0}; }
    static BlochAxis z() { return {0.0, 0.0, 1.0}; }

    double nx() const { return nx_; }
    double ny() const { return ny_; }
    double nz() const { return nz_; }
    BlochAxis flipped() const { return {-nx_, -ny_, -nz_}; }

  private:
    double nx_, ny_, nz_;
};

/// Normalized spinor in the sigma_z basis.
class SpinState {
  public:
    /// Normalizes the given amplitudes; throws ValidationError on a zero vector.
    SpinState(Complex up, Complex down);
    explicit SpinState(const Eigen::Vector2cd &amplitudes);

    const Eigen::Vector2cd &amplitudes() const { return amps_; }
    Complex up() const { return amps_(0); }
    Complex down() const { return amps_(1); }

    /// Same ray with the first non-negligible component made real positive.
    SpinState with_canonical_phase() const;

  private:
    Eigen::Vector2cd amps_;
};

/// 2x2 complex operator acting on spinors.
class SpinOperator {
  public:
    SpinOperator() : m_(Eigen::Matrix2cd::Zero()) {}
    explicit SpinOperator(const Eigen::Matrix2cd &m) : m_(m) {}

    static SpinOperator identity() { return SpinOperator(Eigen::Matrix2cd::Identity()); }

    const Eigen::Matrix2cd &matrix() const { return m_; }
    Complex operator()(int r, int c) const { return m_(r, c); }

    bool is_hermitian(double tol = 1e-12) const;
    bool is_unitary(double tol = 1e-12) const;

    Eigen::Vector2cd apply(const SpinState &s) const { return m_ * s.amplitudes(); }
    SpinOperator pow(unsigned n) const;

    friend SpinOperator operator*(const SpinOperator &a, const SpinOperator &b) {
        return SpinOperator(a.m_ * b.m_);
    }
    friend SpinOperator operator+(const SpinOperator &a, const SpinOperator &b) {
        return SpinOperator(a.m_ + b.m_);
    }
    friend SpinOperator operator*(Complex s, const SpinOperator &a) { return SpinOperator(s * a.m_); }

  private:
    Eigen::Matrix2cd m_;
};

/// Pre-selected ket and post-selected bra of a two-time measurement.
struct PrePostSelection {
    SpinState pre;
    SpinState post;
};

SpinOperator pauli(PauliAxis axis);

/// n . sigma, Hermitian with eigenvalues +-1.
SpinOperator spin_along(const BlochAxis &axis);

/// Eigenvector of n . sigma with eigenvalue `sign` (+1 or -1), canonical phase.
SpinState eigenstate(const BlochAxis &axis, int sign);

/// <bra|ket>
Complex overlap(const SpinState &bra, const SpinState &ket);

/// <post|A|pre> / <post|pre>. Throws OrthogonalSelectionError when
/// |<post|pre>| <= kOrthogonalityThreshold.
Complex weak_value(const PrePostSelection &sel, const SpinOperator &op);

/// (A^n)_w = <post|A^n|pre> / <post|pre>.
Complex weak_value_moment(const PrePostSelection &sel, const SpinOperator &op, unsigned n);

/// <state|A|state> for Hermitian A; throws ValidationError otherwise.
double expectation(const SpinState &state, const SpinOperator &op);

struct OrthogonalDecomposition {
    double mean;
    double spread;
    /// Absent when spread < 1e-12 (state is an eigenstate).
    std::optional<SpinState> perp;
};

/// A|psi> = mean |psi> + spread |psi_perp> with <psi|psi_perp> = 0.
OrthogonalDecomposition orthogonal_decomposition(const SpinState &state, const SpinOperator &op);

/// exp{i angle n.sigma} = cos(angle) I + i sin(angle) n.sigma.
SpinOperator rotation_about(const BlochAxis &axis, double angle);

struct DecompositionTerm {
    double probability;
    /// Empty when the basis state is orthogonal to the pre-selection.
    std::optional<Complex> weak_value;
};

/// Expands <A> over a complete post-selection basis: sum_j P(j) A_w(j).
/// Throws ValidationError if the basis states are not orthogonal within 1e-10.
std::vector<DecompositionTerm> post_selected_decomposition(const SpinState &pre, const SpinOperator &op,
                                                           const SpinState &basis0, const SpinState &basis1);

} // namespace weakval

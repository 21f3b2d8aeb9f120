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
 * One-dimensional pointer (measuring device) wavefunctions sampled on a
 * uniform grid, the exact spin-pointer coupling exp{i lambda Q A}, and the
 * weak-value approximation of the post-selected pointer.
 *
 * A GridSpec always describes the position grid q_j = origin + j * step.
 * Momentum-representation samples live on the reciprocal grid
 * p_k = (k - count/2) * dp with dp = 2 pi / (count * step), and the
 * transform is the unitary continuum Fourier transform
 *   phi(p) = (2 pi)^{-1/2} \int e^{-ipq} phi(q) dq
 * evaluated by FFT.
 */
#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "weakval/spin.hpp"

namespace weakval {

enum class Representation { Position, Momentum };

/// Gaussian pointer exp{-(q - center)^2 / (4 spread^2)}; spread is Delta Q and
/// the conjugate spread is Delta P = 1 / (2 spread).
struct GaussianSpec {
    double center = 0.0;
    double spread = 1.0;

    double momentum_spread() const { return 0.5 / spread; }
    void validate() const;
};

class GridSpec {
  public:
    /// Throws ValidationError unless step > 0 and count is a power of two >= 64.
    GridSpec(double origin, double step, std::size_t count);

    /// Grid of `count` points centred on zero (q = 0 is a grid point).
    static GridSpec centered(double step, std::size_t count);

    /// Smallest power-of-two grid (>= min_count points) centred on zero whose
    /// positions cover [-half_extent, half_extent] and whose momentum axis
    /// reaches at least max_momentum.
    static GridSpec covering(double half_extent, double max_momentum, std::size_t min_count = 512);

    /// Default pointer grid: count * step >= 16 spread + 4 |max_shift|, and
    /// the momentum axis resolves |max_shift| + 8 Delta P.
    static GridSpec for_pointer(const GaussianSpec &spec, double max_shift, std::size_t min_count = 1024);

    double origin() const { return origin_; }
    double step() const { return step_; }
    std::size_t count() const { return count_; }

    double position(std::size_t j) const { return origin_ + static_cast<double>(j) * step_; }
    double momentum_step() const;
    double momentum(std::size_t k) const;
    double coordinate(Representation r, std::size_t i) const {
        return r == Representation::Position ? position(i) : momentum(i);
    }
    double measure(Representation r) const { return r == Representation::Position ? step_ : momentum_step(); }

    double min_position() const { return origin_; }
    double max_position() const { return position(count_ - 1); }
    double max_momentum() const { return -momentum(0); }

    friend bool operator==(const GridSpec &, const GridSpec &) = default;

  private:
    double origin_;
    double step_;
    std::size_t count_;
};

/// Samples of a pointer wavefunction in one representation.
class GridWavefunction {
  public:
    GridWavefunction(GridSpec grid, Representation rep, std::vector<Complex> samples);

    const GridSpec &grid() const { return grid_; }
    Representation representation() const { return rep_; }
    std::span<const Complex> samples() const { return samples_; }
    std::vector<Complex> &mutable_samples() { return samples_; }
    std::size_t size() const { return samples_.size(); }
    const Complex &operator[](std::size_t i) const { return samples_[i]; }

    double coordinate(std::size_t i) const { return grid_.coordinate(rep_, i); }
    double measure() const { return grid_.measure(rep_); }

    double norm2() const;
    /// Copy scaled to unit norm; throws EmptyStateError if norm^2 < 1e-12.
    GridWavefunction normalized() const;
    GridWavefunction scaled(Complex factor) const;

  private:
    GridSpec grid_;
    Representation rep_;
    std::vector<Complex> samples_;
};

/// Spinor-valued pointer wavefunction; components in the sigma_z basis.
class JointState {
  public:
    JointState(GridSpec grid, Representation rep, std::vector<Complex> up, std::vector<Complex> down);

    /// |spin> (x) |pointer>
    static JointState product(const SpinState &spin, const GridWavefunction &pointer);

    const GridSpec &grid() const { return grid_; }
    Representation representation() const { return rep_; }
    std::span<const Complex> up() const { return up_; }
    std::span<const Complex> down() const { return down_; }

    double norm2() const;
    /// Marginal pointer density summed over the spin components.
    std::vector<double> density() const;
    JointState to_momentum() const;

  private:
    GridSpec grid_;
    Representation rep_;
    std::vector<Complex> up_;
    std::vector<Complex> down_;
};

struct Moments {
    double norm2;
    double mean;
    double variance;
};

/// Normalized Gaussian sampled in the requested representation. Throws
/// ValidationError if the grid does not cover center +- 8 spread in position
/// and +- 8 Delta P in momentum.
GridWavefunction gaussian_on_grid(const GaussianSpec &spec, const GridSpec &grid, Representation rep);

GridWavefunction to_momentum(const GridWavefunction &w);
GridWavefunction to_position(const GridWavefunction &w);

/// Midpoint quadrature of |w|^2 and its first two central moments.
Moments moments(const GridWavefunction &w);

/// Applies exp{i lambda q A} at every position grid point. Uses the spectral
/// decomposition of the Hermitian operator A.
JointState couple(const JointState &joint, const SpinOperator &op, double lambda);

struct PostSelected {
    /// Renormalized pointer state conditioned on the post-selection.
    GridWavefunction conditional;
    /// Norm^2 of <post|joint> before renormalization.
    double probability;

    /// conditional * sqrt(probability), i.e. <post|joint> itself.
    GridWavefunction amplitude() const;
};

/// Projects the spin onto `post`. Throws NullPostSelectionError when the
/// probability is below 1e-14.
PostSelected postselect(const JointState &joint, const SpinState &post);

/// Analytic weak-value pointer <post|pre> exp{i lambda Q A_w} phi_in in the
/// momentum representation, computed in closed form. The result is a Gaussian
/// centred at lambda Re(A_w); Im(A_w) shifts it in position and rescales its norm.
GridWavefunction weak_approx_pointer(const PrePostSelection &sel, const SpinOperator &op, double lambda,
                                     const GaussianSpec &spec, const GridSpec &grid);

/// |<a|b>| after normalizing both.
double fidelity(const GridWavefunction &a, const GridWavefunction &b);

/// ||a - b|| / ||b|| on the raw samples.
double l2_error(const GridWavefunction &a, const GridWavefunction &b);

/// CSV with header `x,re,im`, 15 significant digits.
void write_csv(std::ostream &out, const GridWavefunction &w);

} // namespace weakval

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
 * Independent reference computations used by the tests. None of these share
 * code with the library.
 */
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "weakval/spin.hpp"

namespace oracle {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Vec2 = Eigen::Vector2cd;

/// exp(M) by scaling and squaring with a truncated Taylor series.
inline Mat2 expm(const Mat2 &m) {
    const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    }
    const Mat2 a = m / std::pow(2.0, squarings);
    Mat2 term = Mat2::Identity();
    Mat2 sum = Mat2::Identity();
    for (int k = 1; k <= 30; ++k) {
        term = term * a / static_cast<double>(k);
        sum += term;
    }
    for (int s = 0; s < squarings; ++s) {
        sum = sum * sum;
    }
    return sum;
}

inline Mat2 sigma_x() { return (Mat2() << 0, 1, 1, 0).finished(); }
inline Mat2 sigma_y() { return (Mat2() << 0, Complex(0, -1), Complex(0, 1), 0).finished(); }
inline Mat2 sigma_z() { return (Mat2() << 1, 0, 0, -1).finished(); }

inline Mat2 n_dot_sigma(double nx, double ny, double nz) { return nx * sigma_x() + ny * sigma_y() + nz * sigma_z(); }

inline Vec2 up_x() { return Vec2(1, 1) / std::sqrt(2.0); }
inline Vec2 up_y() { return Vec2(Complex(1), Complex(0, 1)) / std::sqrt(2.0); }
inline Vec2 down_y() { return Vec2(Complex(1), Complex(0, -1)) / std::sqrt(2.0); }

inline Complex braket(const Vec2 &bra, const Mat2 &op, const Vec2 &ket) { return bra.adjoint() * op * ket; }

/// Continuous Fourier transform (1/sqrt(2 pi)) int psi(q) e^{-ipq} dq by direct summation.
inline std::vector<Complex> direct_ft(const std::vector<Complex> &psi, const std::vector<double> &q,
                                      const std::vector<double> &p, double dq) {
    std::vector<Complex> out(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < q.size(); ++j) {
            s += psi[j] * std::polar(1.0, -p[k] * q[j]);
        }
        out[k] = s * dq / std::sqrt(2.0 * std::numbers::pi);
    }
    return out;
}

/// Composite Simpson rule on [a, b] with n (even) panels.
template <class F> double simpson(F &&f, double a, double b, int n = 4000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) {
        s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    }
    return s * h / 3.0;
}

inline double central_difference(const std::vector<double> &y, std::size_t i, double h) {
    return (y[i + 1] - y[i - 1]) / (2.0 * h);
}

/// Uniformly random Bloch axis.
inline weakval::BlochAxis random_axis(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    double x, y, z, r;
    do {
        x = n(rng);
        y = n(rng);
        z = n(rng);
        r = std::sqrt(x * x + y * y + z * z);
    } while (r < 1e-6);
    return weakval::BlochAxis::normalized(x, y, z);
}

inline weakval::SpinState random_state(std::mt19937_64 &rng) {
    std::normal_distribution<double> n;
    return weakval::SpinState(Complex(n(rng), n(rng)), Complex(n(rng), n(rng)));
}

inline Vec2 vec(const weakval::SpinState &s) { return s.amplitudes(); }

} // namespace oracle

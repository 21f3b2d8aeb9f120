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

#include "fourier.hpp"

#include <mutex>

#include <fftw3.h>

namespace weakval::detail {

namespace {
// FFTW planning is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;
} // namespace

std::vector<Complex> dft(std::span<const Complex> in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<Complex> buf(in.begin(), in.end());
    std::vector<Complex> out(in.size());
    auto *src = reinterpret_cast<fftw_complex *>(buf.data());
    auto *dst = reinterpret_cast<fftw_complex *>(out.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex);
        plan = fftw_plan_dft_1d(n, src, dst, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard lock(planner_mutex);
        fftw_destroy_plan(plan);
    }
    return out;
}

} // namespace weakval::detail

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

#pragma once

#include <cstddef>

#include "weakval/spin.hpp"

namespace weakval::detail {

/// base^n by repeated squaring.
inline Complex integer_power(Complex base, std::size_t n) {
    Complex out = 1.0;
    while (n > 0) {
        if (n & 1U) {
            out *= base;
        }
        base *= base;
        n >>= 1U;
    }
    return out;
}

} // namespace weakval::detail

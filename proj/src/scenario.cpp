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

#include <cmath>

#include "weakval/errors.hpp"
#include "weakval/protocols.hpp"

namespace weakval {

void Scenario::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw ValidationError("lambda must be finite and >= 0");
    }
    if (!(pointer_spread > 0.0) || !std::isfinite(pointer_spread)) {
        throw ValidationError("pointer spread (delta) must be positive");
    }
    if (particle_count < 1) {
        throw ValidationError("particle count must be >= 1");
    }
    if (pre.sign != 1 && pre.sign != -1) {
        throw ValidationError("pre-selection sign must be +1 or -1");
    }
    if (post.sign != 1 && post.sign != -1) {
        throw ValidationError("post-selection sign must be +1 or -1");
    }
}

} // namespace weakval

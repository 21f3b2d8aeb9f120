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
 * Scenario files, experiment execution and output files.
 *
 * Scenario files are UTF-8 `key = value` lines; `#` starts a comment.
 * Recognized keys:
 *
 *   protocol     ideal | swm | stwm | nswm | validity   (required)
 *   pre, post    axis spec, default x+ and y+
 *   observable   axis spec, default angle:45
 *   lambda       coupling, >= 0, default 0.1
 *   delta        pointer spread, > 0, default 1
 *   n_particles  >= 1, default 1
 *   n_trials     >= 1, default 1000
 *   seed         unsigned 64-bit, default 42
 *   grid_count   power of two >= 64, default 1024
 *   grid_step    > 0; when absent each protocol picks its own step
 *   output_dir   default "."
 *
 * Axis specs: `x`, `y`, `z`, `angle:<degrees in the x-y plane>` or
 * `axis:nx,ny,nz`, optionally signed with a leading or trailing `+`/`-`.
 */
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "weakval/protocols.hpp"
#include "weakval/validity.hpp"

namespace weakval {

enum class Protocol { Ideal, Swm, Stwm, Nswm, Validity };

std::string_view protocol_name(Protocol p);

struct Diagnostic {
    /// 1-based; 0 for file-level problems.
    std::size_t line;
    std::string message;
};

struct ScenarioConfig {
    std::optional<Protocol> protocol;
    Scenario scenario;
    std::size_t grid_count = 1024;
    std::optional<double> grid_step;
    std::string output_dir = ".";
};

struct ParseResult {
    ScenarioConfig config;
    std::vector<Diagnostic> diagnostics;

    bool ok() const { return diagnostics.empty(); }
};

struct KeyValueLine {
    std::size_t line;
    std::string key;
    std::string value;
};

struct KeyValueParse {
    std::vector<KeyValueLine> entries;
    std::vector<Diagnostic> diagnostics;
};

/// Splits `key = value` lines; blank lines and `#` comments are skipped.
KeyValueParse parse_key_values(std::string_view text);

using Value = std::variant<double, bool, std::string>;

/// Number if the whole token parses as one, then true/false, else the string.
Value parse_value(std::string_view token);

/// Throws ValidationError on an unrecognized spec.
SignedAxis parse_signed_axis(std::string_view spec);

ParseResult parse_scenario(std::string_view text);

/// Ordered `key = value` summary.
class Summary {
  public:
    void add(std::string key, double value);
    void add(std::string key, bool value);
    void add(std::string key, std::string value);
    void add(std::string key, const char *value) { add(std::move(key), std::string(value)); }

    const std::vector<std::pair<std::string, std::string>> &entries() const { return entries_; }
    void write(std::ostream &out) const;

  private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

void add_to_summary(Summary &s, const ValidityReport &r);

/// Grid the CLI uses for this configuration and protocol.
GridSpec resolve_grid(const ScenarioConfig &config);

/// Dispatches to the protocol and writes summary.txt and protocol CSVs into
/// config.output_dir. Returns 0 on success, 1 on validation errors and 2 on
/// simulation errors; messages go to `err`.
int run(const ScenarioConfig &config, std::ostream &err, unsigned workers = 1);

struct Figure2Options {
    std::size_t n = 20;
    double lambda = 1.0;
    std::uint64_t seed = 42;
    std::filesystem::path output_dir = ".";
};

/// NSWM exact vs weak-value wavefunction profiles on Q in [-8, 8): writes
/// figure2.csv (`q,re_exact,im_exact,re_approx,im_approx`) and summary.txt.
int figure2(const Figure2Options &opts, std::ostream &err);

void write_profiles_csv(std::ostream &out, const GridWavefunction &exact, const GridWavefunction &approx);

} // namespace weakval

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

#include "weakval/cli_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "weakval/errors.hpp"
#include "weakval/format.hpp"

namespace weakval {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::optional<double> to_double(std::string_view s) {
    s = trim(s);
    if (s.empty()) {
        return std::nullopt;
    }
    const std::string buf(s);
    char *end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) {
        return std::nullopt;
    }
    return v;
}

std::optional<std::uint64_t> to_unsigned(std::string_view s) {
    s = trim(s);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::optional<Protocol> to_protocol(std::string_view s) {
    static const std::map<std::string_view, Protocol> names = {{"ideal", Protocol::Ideal},
                                                               {"swm", Protocol::Swm},
                                                               {"stwm", Protocol::Stwm},
                                                               {"nswm", Protocol::Nswm},
                                                               {"validity", Protocol::Validity}};
    const auto it = names.find(trim(s));
    if (it == names.end()) {
        return std::nullopt;
    }
    return it->second;
}

void write_file(const fs::path &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ValidationError("cannot write " + path.string());
    }
    out << content;
    if (!out) {
        throw SimulationError("failed writing " + path.string());
    }
}

template <class F> std::string render(F &&f) {
    std::ostringstream os;
    f(os);
    return os.str();
}

void add_selection(Summary &s, const ScenarioConfig &c) {
    s.add("protocol", std::string(protocol_name(*c.protocol)));
    s.add("lambda", c.scenario.lambda);
    s.add("delta", c.scenario.pointer_spread);
    s.add("n_particles", static_cast<double>(c.scenario.particle_count));
    s.add("seed", static_cast<double>(c.scenario.seed));
}

double expected_shift(const Scenario &sc) {
    const PrePostSelection sel = sc.selection();
    double scale = 1.0;
    if (std::abs(overlap(sel.post, sel.pre)) > kOrthogonalityThreshold) {
        scale = std::max(1.0, std::abs(weak_value(sel, sc.observable_operator())));
    }
    return sc.lambda * scale;
}

void run_protocol(const ScenarioConfig &config, unsigned workers) {
    Scenario sc = config.scenario;
    sc.validate();
    sc.grid = resolve_grid(config);
    const fs::path dir(config.output_dir);
    fs::create_directories(dir);

    Summary summary;
    add_selection(summary, config);
    switch (*config.protocol) {
    case Protocol::Ideal: {
        const IdealResult r = run_ideal(sc);
        summary.add("peak_count", static_cast<double>(r.peaks.size()));
        for (std::size_t i = 0; i < r.peaks.size(); ++i) {
            const std::string p = "peak_" + std::to_string(i) + "_";
            summary.add(p + "eigenvalue", r.peaks[i].eigenvalue);
            summary.add(p + "center", r.peaks[i].center);
            summary.add(p + "weight", r.peaks[i].weight);
        }
        summary.add("regime_warning", r.warning.value_or("none"));
        write_file(dir / "peaks.csv", render([&](std::ostream &os) {
                       os << "eigenvalue,center,weight\n";
                       for (const auto &pk : r.peaks) {
                           os << format_number(pk.eigenvalue) << ',' << format_number(pk.center) << ','
                              << format_number(pk.weight) << '\n';
                       }
                   }));
        break;
    }
    case Protocol::Swm: {
        const SwmResult r = run_swm(sc, workers);
        summary.add("n_trials", static_cast<double>(sc.trial_count));
        summary.add("accepted", static_cast<double>(r.accepted_readings.size()));
        summary.add("acceptance_rate", r.acceptance_rate);
        summary.add("postselection_probability", r.postselection_probability);
        summary.add("shift", r.mean_shift);
        summary.add("uncertainty", r.standard_error);
        summary.add("mean_shift", r.mean_shift);
        summary.add("standard_error", r.standard_error);
        summary.add("estimated_weak_value", r.estimated_weak_value);
        summary.add("weak_value_reference", weak_value(sc.selection(), sc.observable_operator()).real());
        write_file(dir / "readings.csv", render([&](std::ostream &os) {
                       os << "reading\n";
                       for (double x : r.accepted_readings) {
                           os << format_number(x) << '\n';
                       }
                   }));
        break;
    }
    case Protocol::Stwm: {
        const StwmResult r = stwm_pointer_state(sc);
        summary.add("shift", r.shift);
        summary.add("uncertainty", r.uncertainty);
        summary.add("success_probability", r.success_probability);
        summary.add("weak_value_reference", r.weak_value_reference);
        write_file(dir / "pointer.csv", render([&](std::ostream &os) { write_csv(os, r.pointer_state); }));
        break;
    }
    case Protocol::Nswm: {
        const NswmRun r = run_nswm(sc);
        summary.add("shift", r.momentum_shift_exact);
        summary.add("shift_formula", r.momentum_shift_formula);
        summary.add("imaginary_shift", r.imaginary_shift);
        summary.add("uncertainty", std::sqrt(moments(to_momentum(r.exact_cm_state)).variance));
        summary.add("success_probability", r.exact_cm_state.norm2());
        summary.add("l2_error", r.l2_error);
        summary.add("fidelity", r.fidelity);
        summary.add("cm_coordinate", r.sample.cm_coordinate);
        summary.add("eccentric", r.eccentric);
        write_file(dir / "nswm.csv",
                   render([&](std::ostream &os) { write_profiles_csv(os, r.exact_cm_state, r.approx_cm_state); }));
        write_file(dir / "particles.csv", render([&](std::ostream &os) {
                       os << "index,coordinate,relative_position,wv_re,wv_im\n";
                       for (std::size_t j = 0; j < r.sample.coordinates.size(); ++j) {
                           os << j << ',' << format_number(r.sample.coordinates[j]) << ','
                              << format_number(r.sample.relative_positions[j]) << ','
                              << format_number(r.correction.weak_values[j].real()) << ','
                              << format_number(r.correction.weak_values[j].imag()) << '\n';
                       }
                   }));
        break;
    }
    case Protocol::Validity: {
        const double alpha = weak_value(sc.selection(), sc.observable_operator()).real();
        const ValidityReport r = regime_check(alpha, sc.lambda, sc.particle_count, sc.pointer(), *sc.grid);
        summary.add("alpha_w", alpha);
        add_to_summary(summary, r);
        const GridWavefunction u = uniform_wv_state(alpha, sc.lambda, sc.particle_count, sc.pointer(), *sc.grid);
        const std::vector<double> prof = magnitude_profile(alpha, sc.lambda, sc.particle_count, sc.pointer(), *sc.grid);
        write_file(dir / "uniform_state.csv", render([&](std::ostream &os) { write_csv(os, u); }));
        write_file(dir / "profile.csv", render([&](std::ostream &os) {
                       os << "x,magnitude\n";
                       for (std::size_t j = 0; j < prof.size(); ++j) {
                           os << format_number(sc.grid->position(j)) << ',' << format_number(prof[j]) << '\n';
                       }
                   }));
        break;
    }
    }
    write_file(dir / "summary.txt", render([&](std::ostream &os) { summary.write(os); }));
}

} // namespace

std::string_view protocol_name(Protocol p) {
    switch (p) {
    case Protocol::Ideal:
        return "ideal";
    case Protocol::Swm:
        return "swm";
    case Protocol::Stwm:
        return "stwm";
    case Protocol::Nswm:
        return "nswm";
    case Protocol::Validity:
        return "validity";
    }
    return "unknown";
}

KeyValueParse parse_key_values(std::string_view text) {
    KeyValueParse out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const std::size_t nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            out.diagnostics.push_back({line_no, "malformed line, expected `key = value`"});
            continue;
        }
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty()) {
            out.diagnostics.push_back({line_no, "malformed line, missing key"});
            continue;
        }
        out.entries.push_back({line_no, std::string(key), std::string(value)});
    }
    return out;
}

Value parse_value(std::string_view token) {
    token = trim(token);
    if (const auto d = to_double(token)) {
        return *d;
    }
    if (token == "true") {
        return true;
    }
    if (token == "false") {
        return false;
    }
    return std::string(token);
}

SignedAxis parse_signed_axis(std::string_view spec) {
    std::string_view s = trim(spec);
    int sign = +1;
    auto take_sign = [&](char c) {
        if (c == '-') {
            sign = -1;
        }
    };
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        take_sign(s.front());
        s.remove_prefix(1);
    } else if (!s.empty() && (s.back() == '+' || s.back() == '-') && s.find(':') == std::string_view::npos) {
        take_sign(s.back());
        s.remove_suffix(1);
    }
    s = trim(s);
    if (s == "x") {
        return {BlochAxis::x(), sign};
    }
    if (s == "y") {
        return {BlochAxis::y(), sign};
    }
    if (s == "z") {
        return {BlochAxis::z(), sign};
    }
    if (s.starts_with("angle:")) {
        std::string_view rest = s.substr(6);
        // a trailing sign after the number is allowed: angle:45-
        if (!rest.empty() && (rest.back() == '+' || rest.back() == '-') && rest.size() > 1) {
            take_sign(rest.back());
            rest.remove_suffix(1);
        }
        const auto deg = to_double(rest);
        if (!deg || !std::isfinite(*deg)) {
            throw ValidationError("bad angle in axis spec `" + std::string(spec) + "`");
        }
        return {BlochAxis::in_xy_plane(*deg), sign};
    }
    if (s.starts_with("axis:")) {
        std::string_view rest = s.substr(5);
        std::vector<double> comps;
        while (true) {
            const std::size_t comma = rest.find(',');
            const auto v = to_double(rest.substr(0, comma));
            if (!v || !std::isfinite(*v)) {
                throw ValidationError("bad component in axis spec `" + std::string(spec) + "`");
            }
            comps.push_back(*v);
            if (comma == std::string_view::npos) {
                break;
            }
            rest = rest.substr(comma + 1);
        }
        if (comps.size() != 3) {
            throw ValidationError("axis spec needs three components: `" + std::string(spec) + "`");
        }
        return {BlochAxis::normalized(comps[0], comps[1], comps[2]), sign};
    }
    throw ValidationError("unrecognized axis spec `" + std::string(spec) +
                          "` (expected x|y|z|angle:<deg>|axis:nx,ny,nz with optional sign)");
}

ParseResult parse_scenario(std::string_view text) {
    KeyValueParse kv = parse_key_values(text);
    ParseResult r;
    r.diagnostics = std::move(kv.diagnostics);
    ScenarioConfig &c = r.config;
    std::set<std::string> seen;

    for (const KeyValueLine &e : kv.entries) {
        auto fail = [&](const std::string &msg) { r.diagnostics.push_back({e.line, e.key + ": " + msg}); };
        if (!seen.insert(e.key).second) {
            fail("duplicate key");
            continue;
        }
        try {
            if (e.key == "protocol") {
                c.protocol = to_protocol(e.value);
                if (!c.protocol) {
                    fail("unknown protocol `" + e.value + "` (ideal|swm|stwm|nswm|validity)");
                }
            } else if (e.key == "pre" || e.key == "post") {
                SignedAxis a = parse_signed_axis(e.value);
                (e.key == "pre" ? c.scenario.pre : c.scenario.post) = a;
            } else if (e.key == "observable") {
                const SignedAxis a = parse_signed_axis(e.value);
                c.scenario.observable = a.sign > 0 ? a.axis : a.axis.flipped();
            } else if (e.key == "lambda" || e.key == "delta" || e.key == "grid_step") {
                const auto v = to_double(e.value);
                if (!v || !std::isfinite(*v)) {
                    fail("expected a finite number");
                } else if (e.key == "lambda") {
                    if (*v < 0.0) {
                        fail("out of range: lambda must be >= 0");
                    } else {
                        c.scenario.lambda = *v;
                    }
                } else if (*v <= 0.0) {
                    fail("out of range: must be > 0");
                } else if (e.key == "delta") {
                    c.scenario.pointer_spread = *v;
                } else {
                    c.grid_step = *v;
                }
            } else if (e.key == "n_particles" || e.key == "n_trials" || e.key == "grid_count" || e.key == "seed") {
                const auto v = to_unsigned(e.value);
                if (!v) {
                    fail("expected a non-negative integer");
                } else if (e.key == "seed") {
                    c.scenario.seed = *v;
                } else if (*v < 1) {
                    fail("out of range: must be >= 1");
                } else if (e.key == "n_particles") {
                    c.scenario.particle_count = *v;
                } else if (e.key == "n_trials") {
                    c.scenario.trial_count = *v;
                } else if (*v < 64 || (*v & (*v - 1)) != 0) {
                    fail("out of range: grid_count must be a power of two >= 64");
                } else {
                    c.grid_count = *v;
                }
            } else if (e.key == "output_dir") {
                if (e.value.empty()) {
                    fail("empty path");
                } else {
                    c.output_dir = e.value;
                }
            } else {
                fail("unknown key");
            }
        } catch (const ValidationError &ex) {
            fail(ex.what());
        }
    }
    if (!c.protocol && !seen.contains("protocol")) {
        r.diagnostics.push_back({0, "protocol required"});
    }
    std::stable_sort(r.diagnostics.begin(), r.diagnostics.end(),
                     [](const Diagnostic &a, const Diagnostic &b) { return a.line < b.line; });
    return r;
}

void Summary::add(std::string key, double value) { entries_.emplace_back(std::move(key), format_number(value)); }

void Summary::add(std::string key, bool value) { entries_.emplace_back(std::move(key), value ? "true" : "false"); }

void Summary::add(std::string key, std::string value) { entries_.emplace_back(std::move(key), std::move(value)); }

void Summary::write(std::ostream &out) const {
    for (const auto &[k, v] : entries_) {
        out << k << " = " << v << '\n';
    }
}

void add_to_summary(Summary &s, const ValidityReport &r) {
    s.add("regime_lhs", r.regime_lhs);
    s.add("regime_ok", r.regime_ok);
    s.add("peak_location", r.peak_location);
    s.add("peak_at_origin", r.peak_at_origin);
    s.add("finite_n_correction", r.finite_n_correction);
    s.add("sqrt_n_correction", r.sqrt_n_correction);
    s.add("shift", r.shift);
    s.add("uncertainty", r.uncertainty);
    s.add("amplification", r.amplification);
    s.add("eccentric", r.eccentric);
}

GridSpec resolve_grid(const ScenarioConfig &config) {
    const Scenario &sc = config.scenario;
    if (config.grid_step) {
        return GridSpec::centered(*config.grid_step, config.grid_count);
    }
    if (!config.protocol) {
        throw ValidationError("protocol required");
    }
    switch (*config.protocol) {
    case Protocol::Nswm: {
        const double d = sc.pointer_spread;
        return {-8.0 * d, 16.0 * d / static_cast<double>(config.grid_count), config.grid_count};
    }
    case Protocol::Validity: {
        const double alpha = weak_value(sc.selection(), sc.observable_operator()).real();
        const GridSpec g = validity_grid(alpha, sc.lambda, sc.particle_count, sc.pointer());
        if (g.count() >= config.grid_count) {
            return g;
        }
        return GridSpec::centered(g.step() * static_cast<double>(g.count()) / static_cast<double>(config.grid_count),
                                  config.grid_count);
    }
    default:
        return GridSpec::for_pointer(sc.pointer(), expected_shift(sc), config.grid_count);
    }
}

int run(const ScenarioConfig &config, std::ostream &err, unsigned workers) {
    try {
        if (!config.protocol) {
            throw ValidationError("protocol required");
        }
        run_protocol(config, workers);
        return 0;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const SimulationError &e) {
        err << "runtime error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

void write_profiles_csv(std::ostream &out, const GridWavefunction &exact, const GridWavefunction &approx) {
    if (!(exact.grid() == approx.grid())) {
        throw ValidationError("profiles live on different grids");
    }
    out << "q,re_exact,im_exact,re_approx,im_approx\n";
    for (std::size_t i = 0; i < exact.size(); ++i) {
        out << format_number(exact.coordinate(i)) << ',' << format_number(exact[i].real()) << ','
            << format_number(exact[i].imag()) << ',' << format_number(approx[i].real()) << ','
            << format_number(approx[i].imag()) << '\n';
    }
}

int figure2(const Figure2Options &opts, std::ostream &err) {
    try {
        Scenario sc;
        sc.lambda = opts.lambda;
        sc.particle_count = opts.n;
        sc.seed = opts.seed;
        sc.validate();
        const NswmRun r = run_nswm(sc);
        fs::create_directories(opts.output_dir);
        write_file(opts.output_dir / "figure2.csv",
                   render([&](std::ostream &os) { write_profiles_csv(os, r.exact_cm_state, r.approx_cm_state); }));
        Summary s;
        s.add("protocol", "figure2");
        s.add("n_particles", static_cast<double>(opts.n));
        s.add("lambda", opts.lambda);
        s.add("seed", static_cast<double>(opts.seed));
        s.add("l2_error", r.l2_error);
        s.add("fidelity", r.fidelity);
        s.add("shift", r.momentum_shift_exact);
        s.add("shift_formula", r.momentum_shift_formula);
        s.add("eccentric", r.eccentric);
        write_file(opts.output_dir / "summary.txt", render([&](std::ostream &os) { s.write(os); }));
        return 0;
    } catch (const ValidationError &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const SimulationError &e) {
        err << "runtime error: " << e.what() << '\n';
        return 2;
    } catch (const fs::filesystem_error &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

} // namespace weakval

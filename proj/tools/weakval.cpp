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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weakval/cli_io.hpp"
#include "weakval/errors.hpp"
#include "weakval/format.hpp"

using namespace weakval;

namespace {

int cmd_run(const std::string &path, unsigned workers) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << path << '\n';
        return 1;
    }
    std::ostringstream text;
    text << in.rdbuf();
    const ParseResult parsed = parse_scenario(text.str());
    if (!parsed.ok()) {
        for (const Diagnostic &d : parsed.diagnostics) {
            std::cerr << path << ':' << d.line << ": " << d.message << '\n';
        }
        return 1;
    }
    return run(parsed.config, std::cerr, workers);
}

int cmd_weak_value(const std::string &pre, const std::string &post, const std::string &observable) {
    try {
        const SignedAxis a = parse_signed_axis(pre);
        const SignedAxis b = parse_signed_axis(post);
        const SignedAxis o = parse_signed_axis(observable);
        const PrePostSelection sel{a.state(), b.state()};
        const Complex w = weak_value(sel, spin_along(o.sign > 0 ? o.axis : o.axis.flipped()));
        std::cout << "weak_value_re = " << format_number(w.real()) << '\n'
                  << "weak_value_im = " << format_number(w.imag()) << '\n';
        return 0;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

int cmd_validity(double alpha, double lambda, std::size_t n, double delta) {
    try {
        const GaussianSpec spec{0.0, delta};
        spec.validate();
        if (n < 1 || !(lambda >= 0.0)) {
            throw ValidationError("need n >= 1 and lambda >= 0");
        }
        const GridSpec grid = validity_grid(alpha, lambda, n, spec);
        Summary s;
        s.add("alpha_w", alpha);
        s.add("lambda", lambda);
        s.add("n_particles", static_cast<double>(n));
        s.add("delta", delta);
        add_to_summary(s, regime_check(alpha, lambda, n, spec, grid));
        s.write(std::cout);
        return 0;
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const SimulationError &e) {
        std::cerr << "runtime error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Pre- and post-selected spin-1/2 measurements with Gaussian pointers"};
    app.require_subcommand(1);

    std::string scenario_path;
    unsigned workers = 1;
    auto *run_cmd = app.add_subcommand("run", "Run a scenario file");
    run_cmd->add_option("scenario", scenario_path, "key = value scenario file")->required();
    run_cmd->add_option("--workers", workers, "SWM worker threads")->check(CLI::Range(1u, 256u));

    Figure2Options fig;
    std::string fig_out = ".";
    auto *fig_cmd = app.add_subcommand("figure2", "Exact vs weak-value NSWM profiles");
    fig_cmd->add_option("--n", fig.n, "particle count")->check(CLI::PositiveNumber);
    fig_cmd->add_option("--lambda", fig.lambda, "coupling strength");
    fig_cmd->add_option("--seed", fig.seed, "random seed");
    fig_cmd->add_option("--out", fig_out, "output directory");

    std::string pre, post, observable;
    auto *wv_cmd = app.add_subcommand("weak-value", "Print the complex weak value");
    wv_cmd->add_option("--pre", pre, "pre-selection axis")->required();
    wv_cmd->add_option("--post", post, "post-selection axis")->required();
    wv_cmd->add_option("--observable", observable, "observable axis")->required();

    double alpha = 0.0, lambda = 0.0, delta = 1.0;
    std::size_t n = 1;
    auto *val_cmd = app.add_subcommand("validity", "Regime check for a uniform weak value");
    val_cmd->add_option("--alpha", alpha, "weak value alpha_w")->required();
    val_cmd->add_option("--lambda", lambda, "coupling strength")->required();
    val_cmd->add_option("--n", n, "particle count")->required()->check(CLI::PositiveNumber);
    val_cmd->add_option("--delta", delta, "pointer spread");

    CLI11_PARSE(app, argc, argv);

    if (*run_cmd) {
        return cmd_run(scenario_path, workers);
    }
    if (*fig_cmd) {
        fig.output_dir = fig_out;
        return figure2(fig, std::cerr);
    }
    if (*wv_cmd) {
        return cmd_weak_value(pre, post, observable);
    }
    return cmd_validity(alpha, lambda, n, delta);
}

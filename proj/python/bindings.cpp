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

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weakval/cli_io.hpp"
#include "weakval/errors.hpp"

namespace py = pybind11;
using namespace weakval;

namespace {

BlochAxis observable_axis(const std::string &spec) {
    const SignedAxis a = parse_signed_axis(spec);
    return a.sign > 0 ? a.axis : a.axis.flipped();
}

Scenario make_scenario(const std::string &pre, const std::string &post, const std::string &observable,
                       double lambda, double delta, std::size_t n, std::size_t trials, std::uint64_t seed) {
    Scenario sc;
    sc.pre = parse_signed_axis(pre);
    sc.post = parse_signed_axis(post);
    sc.observable = observable_axis(observable);
    sc.lambda = lambda;
    sc.pointer_spread = delta;
    sc.particle_count = n;
    sc.trial_count = trials;
    sc.seed = seed;
    sc.validate();
    return sc;
}

py::dict summary_dict(const Summary &s) {
    py::dict d;
    for (const auto &[k, v] : s.entries()) {
        d[py::str(k)] = v;
    }
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "weakval core bindings";

    static py::exception<Error> error(m, "Error");
    static py::exception<ValidationError> validation(m, "ValidationError", error.ptr());
    static py::exception<SimulationError> simulation(m, "SimulationError", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) {
                std::rethrow_exception(p);
            }
        } catch (const ValidationError &e) {
            PyErr_SetString(validation.ptr(), e.what());
        } catch (const SimulationError &e) {
            PyErr_SetString(simulation.ptr(), e.what());
        } catch (const Error &e) {
            PyErr_SetString(error.ptr(), e.what());
        }
    });

    m.def(
        "weak_value",
        [](const std::string &pre, const std::string &post, const std::string &observable) {
            const PrePostSelection sel{parse_signed_axis(pre).state(), parse_signed_axis(post).state()};
            return weak_value(sel, spin_along(observable_axis(observable)));
        },
        py::arg("pre"), py::arg("post"), py::arg("observable"));

    m.def(
        "post_selected_decomposition",
        [](const std::string &pre, const std::string &observable, const std::string &basis) {
            const SignedAxis b = parse_signed_axis(basis);
            const auto terms = post_selected_decomposition(parse_signed_axis(pre).state(),
                                                           spin_along(observable_axis(observable)),
                                                           eigenstate(b.axis, +1), eigenstate(b.axis, -1));
            py::list out;
            for (const auto &t : terms) {
                out.append(py::make_tuple(t.probability, t.weak_value));
            }
            return out;
        },
        py::arg("pre"), py::arg("observable"), py::arg("basis"));

    m.def(
        "swm",
        [](double lambda, std::size_t trials, std::uint64_t seed, const std::string &pre, const std::string &post,
           const std::string &observable, double delta, unsigned workers) {
            const SwmResult r = run_swm(make_scenario(pre, post, observable, lambda, delta, 1, trials, seed), workers);
            py::dict d;
            d["acceptance_rate"] = r.acceptance_rate;
            d["mean_shift"] = r.mean_shift;
            d["standard_error"] = r.standard_error;
            d["estimated_weak_value"] = r.estimated_weak_value;
            d["postselection_probability"] = r.postselection_probability;
            d["accepted"] = r.accepted_readings.size();
            return d;
        },
        py::arg("lambda_"), py::arg("trials") = 1000, py::arg("seed") = 42, py::arg("pre") = "x+",
        py::arg("post") = "y+", py::arg("observable") = "angle:45", py::arg("delta") = 1.0, py::arg("workers") = 1);

    m.def(
        "stwm",
        [](double lambda, std::size_t n, const std::string &pre, const std::string &post,
           const std::string &observable, double delta) {
            const StwmResult r = stwm_pointer_state(make_scenario(pre, post, observable, lambda, delta, n, 1, 42));
            py::dict d;
            d["shift"] = r.shift;
            d["uncertainty"] = r.uncertainty;
            d["success_probability"] = r.success_probability;
            d["weak_value_reference"] = r.weak_value_reference;
            return d;
        },
        py::arg("lambda_"), py::arg("n"), py::arg("pre") = "x+", py::arg("post") = "y+",
        py::arg("observable") = "angle:45", py::arg("delta") = 1.0);

    m.def(
        "nswm",
        [](double lambda, std::size_t n, std::uint64_t seed, const std::string &pre, const std::string &post,
           const std::string &observable, double delta) {
            const NswmRun r = run_nswm(make_scenario(pre, post, observable, lambda, delta, n, 1, seed));
            py::dict d;
            d["momentum_shift_exact"] = r.momentum_shift_exact;
            d["momentum_shift_formula"] = r.momentum_shift_formula;
            d["l2_error"] = r.l2_error;
            d["fidelity"] = r.fidelity;
            d["imaginary_shift"] = r.imaginary_shift;
            d["eccentric"] = r.eccentric;
            d["relative_positions"] = r.sample.relative_positions;
            d["weak_values"] = r.correction.weak_values;
            return d;
        },
        py::arg("lambda_"), py::arg("n"), py::arg("seed") = 42, py::arg("pre") = "x+", py::arg("post") = "y+",
        py::arg("observable") = "angle:45", py::arg("delta") = 1.0);

    m.def(
        "regime_check",
        [](double alpha, double lambda, std::size_t n, double delta) {
            const GaussianSpec spec{0.0, delta};
            Summary s;
            add_to_summary(s, regime_check(alpha, lambda, n, spec, validity_grid(alpha, lambda, n, spec)));
            return summary_dict(s);
        },
        py::arg("alpha"), py::arg("lambda_"), py::arg("n"), py::arg("delta") = 1.0);

    m.def(
        "magnitude_profile",
        [](double alpha, double lambda, std::size_t n, double delta) {
            const GaussianSpec spec{0.0, delta};
            const GridSpec grid = validity_grid(alpha, lambda, n, spec);
            std::vector<double> q(grid.count());
            for (std::size_t j = 0; j < q.size(); ++j) {
                q[j] = grid.position(j);
            }
            return py::make_tuple(q, magnitude_profile(alpha, lambda, n, spec, grid));
        },
        py::arg("alpha"), py::arg("lambda_"), py::arg("n"), py::arg("delta") = 1.0);

    m.def(
        "parse_scenario",
        [](const std::string &text) {
            const ParseResult r = parse_scenario(text);
            py::list diags;
            for (const auto &d : r.diagnostics) {
                diags.append(py::make_tuple(d.line, d.message));
            }
            py::dict d;
            d["ok"] = r.ok();
            d["diagnostics"] = diags;
            d["protocol"] = r.config.protocol ? py::object(py::str(std::string(protocol_name(*r.config.protocol))))
                                              : py::object(py::none());
            d["lambda"] = r.config.scenario.lambda;
            d["delta"] = r.config.scenario.pointer_spread;
            d["n_particles"] = r.config.scenario.particle_count;
            d["seed"] = r.config.scenario.seed;
            return d;
        },
        py::arg("text"));
}

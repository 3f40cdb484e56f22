#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <utility>

#include "mfw/analysis.hpp"
#include "mfw/cli.hpp"
#include "mfw/feasible_sets.hpp"
#include "mfw/grid_oracle.hpp"
#include "mfw/objectives.hpp"
#include "mfw/presets.hpp"
#include "mfw/solver.hpp"
#include "mfw/subproblem.hpp"

namespace py = pybind11;

namespace {

using namespace mfw;

// Opaque handles keep the std::variant / std::function internals out of the
// Python surface.
struct PySet {
    FeasibleSet set;
};
struct PyObjective {
    MultiObjective f;
};

std::vector<Vector> rows_of(const Matrix& M) {
    std::vector<Vector> rows;
    rows.reserve(M.rows);
    for (std::size_t i = 0; i < M.rows; ++i) rows.push_back(matrix_row(M, i));
    return rows;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "multiobjective Frank-Wolfe solver core";

    py::class_<PySet>(mod, "FeasibleSet", "norm ball or halfspace polytope");
    py::class_<PyObjective>(mod, "Objective", "vector-valued smooth objective");

    mod.def(
        "norm_ball",
        [](double p, double radius, Vector center) {
            return PySet{make_norm_ball(p, radius, std::move(center))};
        },
        py::arg("p"), py::arg("radius"), py::arg("center"));
    mod.def(
        "l1_ball",
        [](std::size_t n, double radius, Vector center) {
            return PySet{l1_ball_polytope(n, radius, std::move(center))};
        },
        py::arg("n"), py::arg("radius"), py::arg("center"));
    mod.def(
        "polytope",
        [](std::vector<Vector> A, Vector b, std::vector<Vector> vertices) {
            return PySet{make_polytope(matrix_from_rows(A), std::move(b),
                                       std::move(vertices))};
        },
        py::arg("A"), py::arg("b"), py::arg("vertices") = std::vector<Vector>{});
    mod.def(
        "contains",
        [](const PySet& s, const Vector& x, double tol) {
            return contains(s.set, x, tol);
        },
        py::arg("set"), py::arg("x"), py::arg("tol") = 1e-9);
    mod.def(
        "lmo",
        [](const PySet& s, const Vector& direction) {
            LmoResult r = lmo(s.set, direction);
            return py::make_tuple(r.point, r.value);
        },
        py::arg("set"), py::arg("direction"),
        "argmin over the set of <direction, y>; returns (point, value)");
    mod.def(
        "euclidean_diameter",
        [](const PySet& s) { return euclidean_diameter(s.set); }, py::arg("set"));

    mod.def(
        "quadratic_objective",
        [](const std::vector<std::pair<std::vector<Vector>, Vector>>& parts) {
            std::vector<QuadraticComponent> qs;
            qs.reserve(parts.size());
            for (const auto& [A, b] : parts) {
                QuadraticComponent q;
                q.A = matrix_from_rows(A);
                q.b = b;
                qs.push_back(std::move(q));
            }
            return PyObjective{make_multiobjective(std::move(qs))};
        },
        py::arg("parts"),
        "objective with components 0.5*||A_j x - b_j||^2 from (A_j, b_j) pairs");
    mod.def(
        "evaluate",
        [](const PyObjective& o, const Vector& x) { return evaluate(o.f, x); },
        py::arg("objective"), py::arg("x"));
    mod.def(
        "objective_gradients",
        [](const PyObjective& o, const Vector& x) {
            return rows_of(gradients(o.f, x));
        },
        py::arg("objective"), py::arg("x"));
    mod.def(
        "smoothness_constant",
        [](const PyObjective& o) { return smoothness_constant(o.f); },
        py::arg("objective"));
    mod.def(
        "strong_convexity_constant",
        [](const PyObjective& o) { return strong_convexity_constant(o.f); },
        py::arg("objective"));

    py::class_<MinMaxResult>(mod, "MinMaxResult")
        .def_readonly("p_fw", &MinMaxResult::p_fw)
        .def_readonly("d_fw", &MinMaxResult::d_fw)
        .def_readonly("theta_fw", &MinMaxResult::theta_fw)
        .def_readonly("lam", &MinMaxResult::lambda)
        .def_readonly("duality_gap", &MinMaxResult::duality_gap)
        .def_readonly("stationary", &MinMaxResult::stationary);
    mod.def(
        "solve_minmax",
        [](const PyObjective& o, const Vector& x, const PySet& s, double tol) {
            return solve_minmax(gradients(o.f, x), x, s.set, tol);
        },
        py::arg("objective"), py::arg("x"), py::arg("set"),
        py::arg("tol") = 1e-10,
        "direction-finding subproblem min_y max_j <grad F_j(x), y - x>");
    mod.def(
        "theta_tilde",
        [](const std::vector<Vector>& G) {
            return theta_tilde(matrix_from_rows(G)).value;
        },
        py::arg("gradients"),
        "scaled gap: min over the unit ball of the worst inner product");
    mod.def(
        "grid_oracle_minmax",
        [](const std::vector<Vector>& G, const Vector& x, const PySet& s,
           int points) {
            return grid_oracle_minmax(matrix_from_rows(G), x, s.set, points);
        },
        py::arg("gradients"), py::arg("x"), py::arg("set"),
        py::arg("points_per_axis") = 401);

    py::class_<IterateRecord>(mod, "IterateRecord")
        .def_readonly("k", &IterateRecord::k)
        .def_readonly("x", &IterateRecord::x)
        .def_readonly("F", &IterateRecord::F)
        .def_readonly("theta_fw", &IterateRecord::theta_fw)
        .def_readonly("gamma", &IterateRecord::gamma)
        .def_readonly("d_norm", &IterateRecord::d_norm)
        .def_readonly("full_step", &IterateRecord::full_step)
        .def_readonly("theta_tilde_value", &IterateRecord::theta_tilde_value);
    py::class_<RunHistory>(mod, "RunHistory")
        .def_readonly("records", &RunHistory::records)
        .def_readonly("fingerprint", &RunHistory::fingerprint)
        .def_readonly("failure_message", &RunHistory::failure_message)
        .def_property_readonly("termination", [](const RunHistory& h) {
            return std::string(termination_name(h.termination));
        });

    mod.def(
        "run",
        [](const PyObjective& o, const PySet& s, int max_iters, double theta_tol,
           double subproblem_tol, bool record_theta_tilde,
           std::optional<Vector> x0, std::optional<double> L_override) {
            RunConfig cfg;
            cfg.max_iters = max_iters;
            cfg.theta_tol = theta_tol;
            cfg.subproblem_tol = subproblem_tol;
            cfg.record_theta_tilde = record_theta_tilde;
            cfg.x0 = std::move(x0);
            cfg.L_override = L_override;
            return run(o.f, s.set, cfg);
        },
        py::arg("objective"), py::arg("set"), py::arg("max_iters") = 1000,
        py::arg("theta_tol") = 1e-12, py::arg("subproblem_tol") = 1e-10,
        py::arg("record_theta_tilde") = false, py::arg("x0") = py::none(),
        py::arg("L_override") = py::none());

    mod.def("preset_names", [] { return preset_names(); });
    mod.def(
        "preset",
        [](const std::string& name) {
            Preset p = make_preset(name);
            return py::make_tuple(PyObjective{std::move(p.objective)},
                                  PySet{std::move(p.set)});
        },
        py::arg("name"), "(objective, set) of a packaged benchmark");
    mod.def(
        "run_preset",
        [](const std::string& name) {
            Preset p = make_preset(name);
            return run(p.objective, p.set, p.config);
        },
        py::arg("name"), "solve a packaged benchmark at its stock settings");

    mod.def("cli_main", &run_cli, py::arg("args"),
            "invoke the command-line front end; returns its exit code");
}

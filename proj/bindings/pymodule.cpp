#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kerrdiff/bvp.hpp"
#include "kerrdiff/contraction.hpp"
#include "kerrdiff/oracle.hpp"
#include "kerrdiff/solver.hpp"

namespace py = pybind11;
using namespace kerrdiff;

namespace {

PermittivityProfile profile_from(py::object spec, double d) {
    if (py::isinstance<PermittivityProfile>(spec))
        return spec.cast<PermittivityProfile>();
    // A bare number means a constant layer.
    return PermittivityProfile::constant(spec.cast<Cplx>(), d);
}

SolveOptions options_from(double tol, int max_iters, int convention,
                          IterScheme scheme) {
    SolveOptions o;
    o.tol = tol;
    o.max_iters = max_iters;
    o.convention = KernelConvention{convention};
    o.scheme = scheme;
    return o;
}

py::dict trace_dict(const IterationTrace& tr) {
    py::dict t;
    t["deltas"] = tr.deltas;
    t["residuals"] = tr.residuals;
    t["converged"] = tr.converged;
    t["iters_used"] = tr.iters_used;
    t["sup_ratio_to_incident"] = tr.sup_ratio_to_incident;
    return t;
}

py::dict report_dict(const ContractionReport& r) {
    py::dict d;
    d["sup_bound"] = r.E_or_E1;
    d["D0"] = r.D0;
    d["D1"] = r.D1;
    d["alpha0"] = r.alpha0;
    d["alpha1"] = r.alpha1;
    d["t_factor"] = r.t_factor;
    d["chosen_p"] = r.chosen_p;
    d["satisfied"] = r.satisfied;
    if (r.p1) d["p1"] = *r.p1;
    if (r.p2) d["p2"] = *r.p2;
    if (r.p_ext) d["p_ext"] = *r.p_ext;
    d["margins"] = r.margins;
    return d;
}

}  // namespace

PYBIND11_MODULE(_kerrdiff, m) {
    m.doc() =
        "Diffraction of a plane E-polarized wave by a Kerr-nonlinear "
        "dielectric layer: integral-equation solvers, solvability checks "
        "and analytic oracles.";

    py::class_<ProblemParams>(m, "ProblemParams")
        .def_readonly("kappa", &ProblemParams::kappa)
        .def_readonly("phi_angle", &ProblemParams::phi_angle)
        .def_readonly("delta", &ProblemParams::delta)
        .def_readonly("alpha", &ProblemParams::alpha)
        .def_readonly("a_inc", &ProblemParams::a_inc)
        .def_readonly("gamma", &ProblemParams::gamma)
        .def_readonly("b", &ProblemParams::b)
        .def_readonly("d", &ProblemParams::d)
        .def_readonly("s0", &ProblemParams::s0)
        .def_readonly("q0", &ProblemParams::q0);

    py::class_<PermittivityProfile>(m, "PermittivityProfile")
        .def_static("constant", &PermittivityProfile::constant, py::arg("eps"),
                    py::arg("d"))
        .def_static(
            "trig",
            [](const std::vector<std::pair<Cplx, double>>& terms, double d) {
                std::vector<PermittivityProfile::TrigTerm> ts;
                for (const auto& [c, f] : terms) ts.push_back({c, f});
                return PermittivityProfile::trig(std::move(ts), d);
            },
            py::arg("terms"), py::arg("d"))
        .def_static("sampled", &PermittivityProfile::sampled,
                    py::arg("values"), py::arg("d"))
        .def_property_readonly("is_real", &PermittivityProfile::is_real)
        .def("__call__", &PermittivityProfile::eval, py::arg("z"));

    m.def("make_params", &make_params, py::arg("kappa"), py::arg("phi_angle"),
          py::arg("delta"), py::arg("alpha"), py::arg("a_inc") = Cplx(1, 0));

    m.def(
        "solve",
        [](const ProblemParams& P, py::object profile, int grid_n,
           const std::string& scheme, double tol, int max_iters,
           int convention) {
            const auto prof = profile_from(profile, P.d);
            const Grid grid = build_grid(grid_n, P.d);
            const IterScheme sch = (scheme == "coupled") ? IterScheme::Coupled
                                                         : IterScheme::Picard;
            auto opts = options_from(tol, max_iters, convention, sch);
            auto [sol, tr] = (sch == IterScheme::Coupled)
                                 ? solve_coupled(P, prof, grid, opts)
                                 : solve_picard(P, prof, grid, opts);
            const FluxBalance fb = flux_balance(sol, P);
            py::dict d;
            d["z"] = sol.grid.nodes;
            d["u"] = sol.u;
            d["a_scat"] = sol.a_scat;
            d["b_scat"] = sol.b_scat;
            d["residual"] = sol.residual;
            d["R"] = fb.R;
            d["T"] = fb.T;
            d["deficit"] = fb.deficit;
            d["trace"] = trace_dict(tr);
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("grid_n") = 1025,
        py::arg("scheme") = "picard", py::arg("tol") = 1e-10,
        py::arg("max_iters") = 400, py::arg("kernel_convention") = 1);

    m.def(
        "solve_bvp",
        [](const ProblemParams& P, py::object profile, int grid_n, double tol,
           int max_iters) {
            const auto prof = profile_from(profile, P.d);
            const Grid grid = build_grid(grid_n, P.d);
            auto opts = options_from(tol, max_iters, 1, IterScheme::Picard);
            const FieldSolution sol = solve_bvp(P, prof, grid, opts);
            py::dict d;
            d["z"] = sol.grid.nodes;
            d["u"] = sol.u;
            d["a_scat"] = sol.a_scat;
            d["b_scat"] = sol.b_scat;
            d["ie_residual"] = sol.residual;
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("grid_n") = 1025,
        py::arg("tol") = 1e-10, py::arg("max_iters") = 50);

    m.def(
        "check",
        [](const ProblemParams& P, py::object profile, int grid_n) {
            const auto prof = profile_from(profile, P.d);
            const Grid grid = build_grid(grid_n, P.d);
            py::dict d;
            if (prof.is_real())
                d["real_case"] = report_dict(check_real_case(P, prof, grid));
            d["complex_case"] = report_dict(check_complex_case(P, prof, grid));
            const auto w = check_weak_condition(P, prof, grid);
            py::dict wd;
            wd["satisfied"] = w.satisfied;
            wd["margin"] = w.margin;
            wd["lhs"] = w.lhs;
            d["weak_condition"] = wd;
            return d;
        },
        py::arg("params"), py::arg("profile"), py::arg("grid_n") = 257);

    m.def(
        "incident_field",
        [](double z, const ProblemParams& P) { return incident_field(z, P); },
        py::arg("z"), py::arg("params"));

    m.def(
        "lemma1",
        [](const ProblemParams& P, Cplx T_amp, double q) {
            const auto poly = lemma1_closed_form(P, T_amp, q);
            std::vector<std::pair<Cplx, double>> out;
            for (const auto& t : poly.terms()) out.emplace_back(t.coeff, t.freq);
            return out;
        },
        py::arg("params"), py::arg("T_amp"), py::arg("q"),
        "closed-form image of A[T e^{iqz}] U0 as (coeff, freq) pairs");

    m.def(
        "lemma3",
        [](const ProblemParams& P) {
            const auto poly = lemma3_closed_form(P);
            std::vector<std::pair<Cplx, double>> out;
            for (const auto& t : poly.terms()) out.emplace_back(t.coeff, t.freq);
            return out;
        },
        py::arg("params"),
        "closed-form image of the cubic operator on U0 as (coeff, freq) "
        "pairs");

    m.def(
        "apply_operator",
        [](const std::string& which, const std::vector<Cplx>& u,
           const ProblemParams& P, py::object profile, int grid_n,
           int convention) {
            const auto prof = profile_from(profile, P.d);
            const Grid grid = build_grid(grid_n, P.d);
            const QuadratureScheme qs{QuadRule::TrapezoidSplit, grid};
            const KernelConvention conv{convention};
            if (which == "A") return apply_A(u, prof, qs, P, conv);
            if (which == "A1") return apply_A1(u, prof, qs, P, conv);
            if (which == "F") return apply_F(u, qs, P, conv);
            if (which == "T")
                return apply_T(u, prof, qs, P, P.alpha, conv);
            throw std::domain_error("operator must be A, A1, F or T");
        },
        py::arg("which"), py::arg("u"), py::arg("params"), py::arg("profile"),
        py::arg("grid_n"), py::arg("kernel_convention") = 1);

    m.attr("__version__") = "0.1.0";
}

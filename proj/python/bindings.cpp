#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ptqes/catalog.hpp"
#include "ptqes/json_io.hpp"
#include "ptqes/spectrum.hpp"

namespace py = pybind11;
using namespace ptqes;

namespace {

py::dict report_to_dict(const VerificationReport& r) {
    py::list checks;
    for (const CheckEntry& c : r.checks) {
        py::dict d;
        d["name"] = c.name;
        d["residual"] = c.residual;
        d["tolerance"] = c.tolerance;
        d["pass"] = c.pass;
        checks.append(d);
    }
    py::dict out;
    out["checks"] = checks;
    out["state_class"] = to_string(r.state_class);
    out["overall"] = r.overall;
    out["grid"] = py::dict(py::arg("L") = r.grid_half_width, py::arg("N") = r.grid_points);
    out["epsilon"] = r.epsilon;
    return out;
}

}  // namespace

PYBIND11_MODULE(_ptqes, m) {
    m.doc() = "PT-symmetric quasi-exactly-solvable potential construction and verification";

    py::register_exception<ParseError>(m, "ExprParseError", PyExc_ValueError);
    py::register_exception<ZeroGeneratingFunction>(m, "ZeroGeneratingFunctionError",
                                                   PyExc_ArithmeticError);
    py::register_exception<EvalError>(m, "EvalError", PyExc_ArithmeticError);
    py::register_exception<InvalidParameters>(m, "InvalidParametersError", PyExc_ValueError);
    py::register_exception<WrongEntry>(m, "WrongEntryError", PyExc_ValueError);
    py::register_exception<NonConvergence>(m, "NonConvergenceError", PyExc_RuntimeError);

    py::class_<Expr>(m, "Expr")
        .def("__repr__", [](const Expr& e) { return "Expr(" + to_string(e) + ")"; })
        .def("__str__", [](const Expr& e) { return to_string(e); });

    py::class_<Bindings>(m, "Bindings")
        .def(py::init<>())
        .def("bind_real", &Bindings::bind_real, py::arg("name"), py::arg("value"))
        .def("bind_complex", &Bindings::bind_complex, py::arg("name"), py::arg("value"))
        .def("contains", &Bindings::contains)
        .def("is_real", &Bindings::is_real)
        .def("value", &Bindings::value);

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, int>(), py::arg("half_width"), py::arg("n_points"))
        .def_property_readonly("half_width", &Grid::half_width)
        .def_property_readonly("n_points", &Grid::size)
        .def_property_readonly("spacing", &Grid::spacing)
        .def("point", &Grid::point)
        .def("points", [](const Grid& g) {
            std::vector<double> xs(g.size());
            for (int j = 0; j < g.size(); ++j) xs[j] = g.point(j);
            return xs;
        });

    py::class_<SampledFunction>(m, "SampledFunction")
        .def_property_readonly("grid", &SampledFunction::grid)
        .def_property_readonly("values", [](const SampledFunction& f) { return f.values(); })
        .def("__len__", &SampledFunction::size)
        .def("__getitem__",
             [](const SampledFunction& f, int j) {
                 if (j < 0 || j >= f.size()) throw py::index_error();
                 return f[j];
             })
        .def("max_abs", &SampledFunction::max_abs);

    py::class_<FactorizationEnergy>(m, "FactorizationEnergy")
        .def(py::init([](Complex v) { return FactorizationEnergy{v}; }), py::arg("value"))
        .def_property_readonly("value",
                               [](const FactorizationEnergy& e) { return e.value; });

    py::class_<PTModel>(m, "PTModel")
        .def_readonly("grid", &PTModel::grid)
        .def_property_readonly("epsilon", [](const PTModel& p) { return p.epsilon.value; })
        .def_readonly("u_plus", &PTModel::u_plus)
        .def_readonly("u_minus", &PTModel::u_minus)
        .def_readonly("w", &PTModel::w)
        .def_readonly("v", &PTModel::v)
        .def_readonly("psi", &PTModel::psi)
        .def_readonly("log_psi", &PTModel::log_psi)
        .def_readonly("psi_clamped", &PTModel::psi_clamped);

    py::enum_<StateClass>(m, "StateClass")
        .value("BoundState", StateClass::BoundState)
        .value("ContinuumState", StateClass::ContinuumState)
        .value("NotAnEigenstate", StateClass::NotAnEigenstate);

    py::class_<Tolerances>(m, "Tolerances")
        .def(py::init<>())
        .def_readwrite("symmetry", &Tolerances::symmetry)
        .def_readwrite("schrodinger_factor", &Tolerances::schrodinger_factor)
        .def_readwrite("decay", &Tolerances::decay)
        .def_readwrite("bounded", &Tolerances::bounded);

    py::class_<Spectrum>(m, "Spectrum")
        .def_readonly("eigenvalues", &Spectrum::eigenvalues)
        .def_readonly("reality_fraction", &Spectrum::reality_fraction)
        .def_readonly("backward_errors", &Spectrum::backward_errors)
        .def_readonly("max_backward_error", &Spectrum::max_backward_error);

    py::class_<MatchResult>(m, "MatchResult")
        .def_readonly("matched", &MatchResult::matched)
        .def_readonly("distance", &MatchResult::distance)
        .def_readonly("index", &MatchResult::index);

    py::class_<TridiagonalComplexMatrix>(m, "TridiagonalComplexMatrix")
        .def_readonly("diagonal", &TridiagonalComplexMatrix::diagonal)
        .def_readonly("off_diagonal", &TridiagonalComplexMatrix::off_diagonal)
        .def_property_readonly("dimension", &TridiagonalComplexMatrix::dimension);

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_readonly("name", &CatalogEntry::name)
        .def_readonly("u_plus", &CatalogEntry::u_plus)
        .def_readonly("bindings", &CatalogEntry::bindings)
        .def_property_readonly("epsilon",
                               [](const CatalogEntry& e) { return e.epsilon.value; })
        .def_readonly("power", &CatalogEntry::power)
        .def_readonly("u_minus", &CatalogEntry::u_minus)
        .def_readonly("w", &CatalogEntry::w)
        .def_readonly("v", &CatalogEntry::v)
        .def_readonly("psi", &CatalogEntry::psi)
        .def_readonly("log_psi", &CatalogEntry::log_psi)
        .def_readonly("exactly_solvable", &CatalogEntry::exactly_solvable)
        .def_readonly("notes", &CatalogEntry::notes);

    // expression language
    m.def("parse", &parse, py::arg("source"));
    m.def("differentiate", &differentiate, py::arg("expr"));
    m.def(
        "evaluate",
        [](const Expr& e, double x, const Bindings& b) { return evaluate(e, x, b); },
        py::arg("expr"), py::arg("x"), py::arg("bindings") = Bindings());
    m.def("conjugate_reflect", &conjugate_reflect, py::arg("expr"), py::arg("bindings"));
    m.def("to_string", [](const Expr& e) { return to_string(e); });
    m.def(
        "sample",
        [](const Expr& e, const Grid& g, const Bindings& b) { return sample(e, g, b); },
        py::arg("expr"), py::arg("grid"), py::arg("bindings") = Bindings());

    // construction
    m.def(
        "build_model",
        [](const Expr& u_plus, Complex eps, const Grid& g, const Bindings& b) {
            return build_model(u_plus, FactorizationEnergy{eps}, g, b);
        },
        py::arg("u_plus"), py::arg("epsilon"), py::arg("grid"),
        py::arg("bindings") = Bindings());
    m.def(
        "build_u_minus",
        [](const Expr& u_plus, Complex eps, const Grid& g, const Bindings& b) {
            return build_u_minus(u_plus, FactorizationEnergy{eps}, g, b);
        },
        py::arg("u_plus"), py::arg("epsilon"), py::arg("grid"),
        py::arg("bindings") = Bindings());
    m.def(
        "build_superpotential",
        [](const Expr& u_plus, Complex eps, const Grid& g, const Bindings& b) {
            return build_superpotential(u_plus, FactorizationEnergy{eps}, g, b);
        },
        py::arg("u_plus"), py::arg("epsilon"), py::arg("grid"),
        py::arg("bindings") = Bindings());

    // verification
    m.def(
        "run_battery",
        [](const PTModel& model, const Tolerances& tols) {
            return report_to_dict(run_battery(model, tols));
        },
        py::arg("model"), py::arg("tolerances") = Tolerances());
    m.def(
        "run_battery_json",
        [](const PTModel& model, const Tolerances& tols) {
            return report_to_json(run_battery(model, tols)).dump(2);
        },
        py::arg("model"), py::arg("tolerances") = Tolerances());
    m.def(
        "classify_state",
        [](const SampledFunction& psi, double decay_tol, double bound_tol) {
            return classify_state(psi, decay_tol, bound_tol);
        },
        py::arg("psi"), py::arg("decay_tol") = 1e-3, py::arg("bound_tol") = 1e3);

    // spectrum
    m.def("discretize", &discretize, py::arg("v"));
    m.def("eigenvalues", &eigenvalues, py::arg("matrix"));
    m.def(
        "match_factorization_energy",
        [](const Spectrum& s, Complex eps, double tol) {
            return match_factorization_energy(s, FactorizationEnergy{eps}, tol);
        },
        py::arg("spectrum"), py::arg("epsilon"), py::arg("tol") = 1e-3);
    m.def(
        "sweep",
        [](const Expr& u_plus, const std::vector<Complex>& eps_path, const Grid& g,
           const Bindings& b, const Tolerances& tols) {
            py::list out;
            for (const SweepRecord& rec : sweep(u_plus, eps_path, g, b, tols)) {
                py::dict d;
                d["epsilon"] = rec.epsilon;
                if (!rec.error.empty()) {
                    d["error"] = rec.error;
                } else {
                    d["reality_fraction"] = rec.reality_fraction;
                    d["nearest_distance"] = rec.nearest_distance;
                    d["n_eigenvalues"] = rec.n_eigenvalues;
                    if (rec.report) {
                        d["overall"] = rec.report->overall;
                        d["state_class"] = to_string(rec.report->state_class);
                    }
                }
                out.append(d);
            }
            return out;
        },
        py::arg("u_plus"), py::arg("eps_path"), py::arg("grid"),
        py::arg("bindings") = Bindings(), py::arg("tolerances") = Tolerances());

    // catalog
    m.def("example1", &example1, py::arg("alpha"), py::arg("a"), py::arg("n"),
          py::arg("epsilon"));
    m.def("example2", &example2, py::arg("alpha"), py::arg("k"), py::arg("epsilon"));
    m.def("pt_wavefunction_limit", &pt_wavefunction_limit, py::arg("f"), py::arg("B"),
          py::arg("grid"), py::arg("bindings") = Bindings());
    m.def("pt_limit_model", &pt_limit_model, py::arg("f"), py::arg("B"), py::arg("eps_re"),
          py::arg("grid"), py::arg("bindings") = Bindings());
    m.def(
        "limit_sequence",
        [](const Expr& f, double B, double eps_re, const std::vector<double>& alphas,
           const Grid& g, const Bindings& b) {
            LimitSequence seq = limit_sequence(f, B, eps_re, alphas, g, b);
            py::dict d;
            d["alphas"] = seq.alphas;
            d["epsilons"] = seq.epsilons;
            d["max_errors"] = seq.max_errors;
            d["w_limit"] = seq.w_limit;
            return d;
        },
        py::arg("f"), py::arg("B"), py::arg("eps_re"), py::arg("alphas"), py::arg("grid"),
        py::arg("bindings") = Bindings());
    m.def(
        "check_n1_oscillator_structure",
        [](const CatalogEntry& entry, const Grid& g, double tol) {
            CheckEntry c = check_n1_oscillator_structure(entry, g, tol);
            py::dict d;
            d["name"] = c.name;
            d["residual"] = c.residual;
            d["tolerance"] = c.tolerance;
            d["pass"] = c.pass;
            return d;
        },
        py::arg("entry"), py::arg("grid"), py::arg("tol") = 1e-8);
    m.def(
        "compare_with_pipeline",
        [](const CatalogEntry& entry, const Grid& g, double exclusion_radius) {
            OracleDeviation dev = compare_with_pipeline(entry, g, exclusion_radius);
            py::dict d;
            d["u_minus"] = dev.u_minus;
            d["w"] = dev.w;
            d["v"] = dev.v;
            d["psi"] = dev.psi;
            d["max"] = dev.max();
            return d;
        },
        py::arg("entry"), py::arg("grid"), py::arg("exclusion_radius") = 0.1);
}

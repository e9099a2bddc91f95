#include "dwall/cli.hpp"
#include "dwall/coupled_states.hpp"
#include "dwall/energetics.hpp"
#include "dwall/ground_state.hpp"
#include "dwall/limit_models.hpp"
#include "dwall/spectral.hpp"
#include "dwall/split_continuation.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace dwall;

namespace {

py::array_t<double> to_array(std::span<const double> v)
{
    return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

std::vector<double> from_array(const py::array_t<double, py::array::c_style | py::array::forcecast>& a)
{
    if (a.ndim() != 1) throw InvalidArgument("expected a one-dimensional array");
    return std::vector<double>(a.data(), a.data() + a.size());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Domain walls in two-component trapped condensates";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
    py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
    py::register_exception<BracketError>(m, "BracketError", base.ptr());

    py::class_<Grid>(m, "Grid")
        .def(py::init<double, double, int>(), py::arg("x_min"), py::arg("x_max"), py::arg("n"))
        .def_property_readonly("x_min", &Grid::x_min)
        .def_property_readonly("x_max", &Grid::x_max)
        .def_property_readonly("n", &Grid::size)
        .def_property_readonly("h", &Grid::spacing)
        .def("nodes", [](const Grid& g) { return to_array(g.nodes()); })
        .def("__repr__", [](const Grid& g) {
            return "Grid(" + std::to_string(g.x_min()) + ", " + std::to_string(g.x_max()) + ", " +
                   std::to_string(g.size()) + ")";
        });

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init([](const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& v) {
                 return ScalarField(g, from_array(v));
             }),
             py::arg("grid"), py::arg("values"))
        .def_property_readonly("grid", &ScalarField::grid)
        .def_property_readonly("values", [](const ScalarField& f) { return to_array(f.values()); });

    py::class_<PairField>(m, "PairField")
        .def(py::init([](const Grid& g, const py::array_t<double, py::array::c_style | py::array::forcecast>& a,
                         const py::array_t<double, py::array::c_style | py::array::forcecast>& b) {
                 return PairField(g, from_array(a), from_array(b));
             }),
             py::arg("grid"), py::arg("first"), py::arg("second"))
        .def_property_readonly("grid", &PairField::grid)
        .def_property_readonly("first", [](const PairField& f) { return to_array(f.first()); })
        .def_property_readonly("second", [](const PairField& f) { return to_array(f.second()); });

    py::class_<SolveReport>(m, "SolveReport")
        .def_readonly("iterations", &SolveReport::iterations)
        .def_readonly("residual", &SolveReport::residual)
        .def_readonly("converged", &SolveReport::converged)
        .def_readonly("seconds", &SolveReport::seconds);

    py::class_<PhysParams>(m, "PhysParams")
        .def(py::init<double, double, double, double>(), py::arg("eps") = 0.1, py::arg("gamma") = 3.0,
             py::arg("mu") = 0.0, py::arg("alpha") = 0.0)
        .def_readwrite("eps", &PhysParams::eps)
        .def_readwrite("gamma", &PhysParams::gamma)
        .def_readwrite("mu", &PhysParams::mu)
        .def_readwrite("alpha", &PhysParams::alpha);

    py::class_<GroundState>(m, "GroundState")
        .def_readonly("eps", &GroundState::eps)
        .def_readonly("eta", &GroundState::eta)
        .def_readonly("report", &GroundState::report)
        .def("at", &GroundState::at);

    m.def("solve_eta", &solve_eta, py::arg("eps"), py::arg("grid"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 200000, py::call_guard<py::gil_scoped_release>());
    m.def("thomas_fermi", &thomas_fermi, py::arg("grid"));

    py::class_<EnergyBreakdown>(m, "EnergyBreakdown")
        .def_readonly("kinetic", &EnergyBreakdown::kinetic)
        .def_readonly("trap", &EnergyBreakdown::trap)
        .def_readonly("quartic", &EnergyBreakdown::quartic)
        .def_readonly("coupling", &EnergyBreakdown::coupling)
        .def_readonly("total", &EnergyBreakdown::total);
    m.def("energy_G", &energy_G, py::arg("psi"), py::arg("params"));
    m.def("energy_F", &energy_F, py::arg("eta"), py::arg("eps"));
    m.def("splitting_check", &splitting_check, py::arg("psi"), py::arg("params"), py::arg("eta"));

    py::enum_<WallKind>(m, "WallKind")
        .value("symmetric", WallKind::symmetric)
        .value("wall_first_dominant", WallKind::wall_first_dominant)
        .value("wall_second_dominant", WallKind::wall_second_dominant);
    py::class_<WallProfile>(m, "WallProfile")
        .def_readonly("psi", &WallProfile::psi)
        .def_readonly("report", &WallProfile::report)
        .def_readonly("kind", &WallProfile::kind);
    py::class_<HomogeneousWall>(m, "HomogeneousWall")
        .def_readonly("phi", &HomogeneousWall::phi)
        .def_readonly("report", &HomogeneousWall::report);
    m.def("symmetric_state", &symmetric_state, py::arg("eta"), py::arg("gamma"));
    m.def("solve_homogeneous_wall", &solve_homogeneous_wall, py::arg("gamma"), py::arg("grid"),
          py::arg("tol") = 1e-9, py::arg("max_iter") = 200000, py::call_guard<py::gil_scoped_release>());

    py::class_<SplitPoint>(m, "SplitPoint")
        .def_readonly("alpha", &SplitPoint::alpha)
        .def_readonly("split", &SplitPoint::split)
        .def_readonly("energy", &SplitPoint::energy)
        .def_readonly("kind", &SplitPoint::kind)
        .def_readonly("converged", &SplitPoint::converged);
    py::class_<WallRoot>(m, "WallRoot")
        .def_readonly("point", &WallRoot::point)
        .def_readonly("profile", &WallRoot::profile)
        .def_readonly("evaluations", &WallRoot::evaluations);
    m.def("split_function", &split_function, py::arg("params"), py::arg("eta"), py::arg("grid"),
          py::arg("tol") = 1e-9, py::call_guard<py::gil_scoped_release>());
    m.def(
        "find_wall_alpha",
        [](const PhysParams& p, const GroundState& eta, const Grid& grid, std::pair<double, double> bracket,
           double tol_alpha) { return find_wall_alpha(p, eta, grid, bracket, tol_alpha); },
        py::arg("params"), py::arg("eta"), py::arg("grid"), py::arg("bracket"), py::arg("tol_alpha") = 1e-4,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "low_eigenvalues",
        [](const std::string& kind, double eps, double gamma, const std::string& bc, const GroundState& eta, int k) {
            OperatorKind op = OperatorKind::L_gamma;
            bool known = false;
            for (auto c : {OperatorKind::L_plus, OperatorKind::L_minus, OperatorKind::L_gamma, OperatorKind::L_partner})
                if (kind == to_string(c)) op = c, known = true;
            if (!known) throw InvalidArgument("unknown operator " + kind);
            if (bc != "dirichlet" && bc != "neumann") throw InvalidArgument("bc must be dirichlet or neumann");
            OperatorSpec spec{op, eps, gamma, bc == "dirichlet" ? Boundary::dirichlet : Boundary::neumann,
                              eta.eta.grid()};
            return low_eigenvalues(assemble(spec, eta), k).eigenvalues;
        },
        py::arg("kind"), py::arg("eps"), py::arg("gamma"), py::arg("bc"), py::arg("eta"), py::arg("k") = 5);
    m.def("gamma_zero", &gamma_zero, py::arg("eps"), py::arg("eta"), py::arg("bracket") = std::pair{1.0, 3.0},
          py::arg("tol") = 1e-10, py::call_guard<py::gil_scoped_release>());

    py::enum_<LimitCoordinate>(m, "LimitCoordinate")
        .value("x_unit_interval", LimitCoordinate::x_unit_interval)
        .value("xi_half_line", LimitCoordinate::xi_half_line);
    py::class_<LimitEigen>(m, "LimitEigen")
        .def_readonly("nu0", &LimitEigen::nu0)
        .def_readonly("v0", &LimitEigen::v0)
        .def_readonly("coordinate", &LimitEigen::coordinate);
    py::class_<LimitProfile>(m, "LimitProfile")
        .def_readonly("u", &LimitProfile::u)
        .def_readonly("report", &LimitProfile::report)
        .def_readonly("constant", &LimitProfile::constant);
    m.def("solve_nu0", &solve_nu0, py::arg("coordinate"), py::arg("grid"));
    m.def("mu_zero", py::overload_cast<const LimitEigen&>(&mu_zero), py::arg("le"));
    m.def("normal_form_delta2", &normal_form_delta2, py::arg("le"));
    m.def("solve_limit_profile", &solve_limit_profile, py::arg("mu"), py::arg("grid"), py::arg("tol") = 1e-10,
          py::arg("max_iter") = 2000000, py::call_guard<py::gil_scoped_release>());
    m.def("explicit_wall", &explicit_wall, py::arg("grid"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int rc = cli::run(args, out, err);
            return py::make_tuple(rc, out.str(), err.str());
        },
        py::arg("args"));
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "endopriv/analytic_constant.hpp"
#include "endopriv/analytic_linear.hpp"
#include "endopriv/closed_form.hpp"
#include "endopriv/numeric_solver.hpp"
#include "endopriv/special.hpp"

namespace py = pybind11;
using namespace endopriv;

namespace {

std::vector<double> budgets_of(const MarketConfig& m) {
    return {m.budgets().begin(), m.budgets().end()};
}

std::string repr(const EquilibriumSet& s) {
    std::ostringstream out;
    out << "EquilibriumSet(points=[";
    for (std::size_t i = 0; i < s.points.size(); ++i) out << (i ? ", " : "") << s.points[i].alpha;
    out << "], intervals=[";
    for (std::size_t i = 0; i < s.intervals.size(); ++i) {
        out << (i ? ", " : "") << "(" << s.intervals[i].lo << ", " << s.intervals[i].hi << ")";
    }
    out << "], source=" << to_string(s.source) << ")";
    return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Participation equilibria of data markets with endogenous privacy costs";

    py::class_<MarketConfig>(m, "MarketConfig")
        .def(py::init<double, std::vector<double>, double>(), py::arg("user_mass"), py::arg("budgets"),
             py::arg("price"))
        .def_property_readonly("user_mass", &MarketConfig::user_mass)
        .def_property_readonly("price", &MarketConfig::price)
        .def_property_readonly("buyers", &MarketConfig::buyers)
        .def_property_readonly("budgets", &budgets_of)
        .def("with_price", &MarketConfig::with_price, py::arg("price"));

    py::class_<ConstantBenefit>(m, "ConstantBenefit")
        .def(py::init<double>(), py::arg("q"))
        .def_readonly("q", &ConstantBenefit::q);
    py::class_<LinearBenefit>(m, "LinearBenefit")
        .def(py::init<double>(), py::arg("c"))
        .def_readonly("c", &LinearBenefit::c);
    py::class_<PowerBenefit>(m, "PowerBenefit")
        .def(py::init<double, double>(), py::arg("c"), py::arg("s"))
        .def_readonly("c", &PowerBenefit::c)
        .def_readonly("s", &PowerBenefit::s);
    py::class_<SShapedBenefit>(m, "SShapedBenefit")
        .def(py::init<double, double, double>(), py::arg("c"), py::arg("a"), py::arg("b"))
        .def_readonly("c", &SShapedBenefit::c)
        .def_readonly("a", &SShapedBenefit::a)
        .def_readonly("b", &SShapedBenefit::b);
    py::class_<BenefitFunction>(m, "BenefitFunction")
        .def(py::init<ConstantBenefit>())
        .def(py::init<LinearBenefit>())
        .def(py::init<PowerBenefit>())
        .def(py::init<SShapedBenefit>())
        .def("__call__", &BenefitFunction::eval, py::arg("alpha"), py::arg("user_mass"));
    py::implicitly_convertible<ConstantBenefit, BenefitFunction>();
    py::implicitly_convertible<LinearBenefit, BenefitFunction>();
    py::implicitly_convertible<PowerBenefit, BenefitFunction>();
    py::implicitly_convertible<SShapedBenefit, BenefitFunction>();

    py::class_<UniformValuation>(m, "UniformValuation")
        .def(py::init<double>(), py::arg("scale") = 1.0)
        .def_readonly("scale", &UniformValuation::scale);
    py::class_<PersonalizedValuation>(m, "PersonalizedValuation")
        .def(py::init<double>(), py::arg("v_m"))
        .def_readonly("v_m", &PersonalizedValuation::v_m);
    py::class_<ValuationDistribution>(m, "ValuationDistribution")
        .def(py::init<UniformValuation>())
        .def(py::init<PersonalizedValuation>())
        .def_static("empirical", &ValuationDistribution::empirical, py::arg("samples"))
        .def("cdf", &ValuationDistribution::cdf, py::arg("x"))
        .def("quantile", &ValuationDistribution::quantile, py::arg("u"));
    py::implicitly_convertible<UniformValuation, ValuationDistribution>();
    py::implicitly_convertible<PersonalizedValuation, ValuationDistribution>();

    py::enum_<Regime>(m, "Regime")
        .value("partial", Regime::partial)
        .value("full", Regime::full)
        .value("mixed", Regime::mixed);
    py::enum_<Source>(m, "Source")
        .value("analytic", Source::analytic)
        .value("numeric", Source::numeric)
        .value("oracle", Source::oracle);

    py::class_<EquilibriumPoint>(m, "EquilibriumPoint")
        .def_readonly("alpha", &EquilibriumPoint::alpha)
        .def_readonly("regime", &EquilibriumPoint::regime)
        .def_readonly("threshold", &EquilibriumPoint::threshold)
        .def_readonly("possible_merge", &EquilibriumPoint::possible_merge)
        .def_property_readonly("allocation",
                               [](const EquilibriumPoint& p) { return p.allocation.per_buyer; });
    py::class_<EquilibriumInterval>(m, "EquilibriumInterval")
        .def_readonly("lo", &EquilibriumInterval::lo)
        .def_readonly("hi", &EquilibriumInterval::hi)
        .def_readonly("lo_open", &EquilibriumInterval::lo_open)
        .def_readonly("hi_open", &EquilibriumInterval::hi_open);
    py::class_<EquilibriumSet>(m, "EquilibriumSet")
        .def_readonly("points", &EquilibriumSet::points)
        .def_readonly("intervals", &EquilibriumSet::intervals)
        .def_readonly("source", &EquilibriumSet::source)
        .def_readonly("near_boundary", &EquilibriumSet::near_boundary)
        .def_property_readonly("alphas",
                               [](const EquilibriumSet& s) {
                                   std::vector<double> a;
                                   for (const auto& p : s.points) a.push_back(p.alpha);
                                   return a;
                               })
        .def("empty", &EquilibriumSet::empty)
        .def("contains", &EquilibriumSet::contains, py::arg("alpha"), py::arg("tol") = 0.0)
        .def("__len__", &EquilibriumSet::size)
        .def("__repr__", &repr);

    py::class_<SolverSettings>(m, "SolverSettings")
        .def(py::init([](int grid_points, double tolerance, double refine_tolerance, int interval_min_run) {
                 SolverSettings s{grid_points, tolerance, refine_tolerance, interval_min_run};
                 s.validate();
                 return s;
             }),
             py::arg("grid_points") = 4096, py::arg("tolerance") = 2e-3, py::arg("refine_tolerance") = 1e-10,
             py::arg("interval_min_run") = 3)
        .def_readonly("grid_points", &SolverSettings::grid_points)
        .def_readonly("tolerance", &SolverSettings::tolerance)
        .def_readonly("refine_tolerance", &SolverSettings::refine_tolerance)
        .def_readonly("interval_min_run", &SolverSettings::interval_min_run);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("price", &SweepRow::price)
        .def_readonly("equilibria", &SweepRow::equilibria)
        .def_readonly("analytic", &SweepRow::analytic);

    m.def("expected_purchases", &expected_purchases, py::arg("config"), py::arg("alpha"));
    m.def("threshold_valuation", &threshold_valuation, py::arg("config"), py::arg("benefit"), py::arg("alpha"));
    m.def("residual", &residual, py::arg("config"), py::arg("benefit"), py::arg("dist"), py::arg("alpha"));

    m.def("solve_constant", &solve_constant, py::arg("config"), py::arg("q"));
    m.def("classify_constant",
          [](const MarketConfig& c, double q) { return std::string(to_string(classify_constant(c, q))); },
          py::arg("config"), py::arg("q"));
    m.def("constant_price_threshold", [](const MarketConfig& c, double q) { return thresholds(c, q).p_threshold; },
          py::arg("config"), py::arg("q"));
    m.def("solve_linear", &solve_linear, py::arg("config"), py::arg("c"));
    m.def("classify_linear",
          [](const MarketConfig& c, double q) { return std::string(to_string(classify_linear(c, q))); },
          py::arg("config"), py::arg("c"));
    m.def("linear_price_threshold", [](const MarketConfig& c, double x) { return linear_thresholds(c, x).p_threshold; },
          py::arg("config"), py::arg("c"));
    m.def("solve_closed_form", &solve_closed_form, py::arg("config"), py::arg("benefit"),
          py::arg("dist") = ValuationDistribution(UniformValuation{}));
    m.def("exogenous_constant", &exogenous_constant, py::arg("q"), py::arg("v"));

    m.def("grid_equilibria", &grid_equilibria, py::arg("config"), py::arg("benefit"),
          py::arg("dist") = ValuationDistribution(UniformValuation{}), py::arg("settings") = SolverSettings{},
          py::call_guard<py::gil_scoped_release>());
    m.def("empirical_oracle", &empirical_oracle, py::arg("config"), py::arg("benefit"), py::arg("dist"),
          py::arg("n"), py::arg("seed"), py::arg("settings") = SolverSettings{},
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "sweep",
        [](const MarketConfig& c, const BenefitFunction& b, const ValuationDistribution& d,
           const std::vector<double>& prices, const SolverSettings& s, bool cross_check) {
            return sweep(c, b, d, prices, s, cross_check).rows;
        },
        py::arg("config"), py::arg("benefit"), py::arg("dist"), py::arg("prices"),
        py::arg("settings") = SolverSettings{}, py::arg("analytic_cross_check") = false,
        py::call_guard<py::gil_scoped_release>());
    m.def("set_distance", &set_distance, py::arg("a"), py::arg("b"));
    m.def("regularized_incomplete_beta", &regularized_incomplete_beta, py::arg("x"), py::arg("a"), py::arg("b"));
}

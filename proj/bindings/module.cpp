#include "wanderflow/chordal.hpp"
#include "wanderflow/io.hpp"
#include "wanderflow/lineflow.hpp"
#include "wanderflow/numflow.hpp"
#include "wanderflow/orbitspace.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace wanderflow;

namespace {

std::vector<std::tuple<std::string, std::string, std::string>> diag_list(
    const FoliationModel& m) {
    std::vector<std::tuple<std::string, std::string, std::string>> out;
    for (const auto& d : validate(m))
        out.emplace_back(d.severity == Diagnostic::Severity::error ? "error" : "warning", d.code,
                         d.message);
    return out;
}

std::vector<std::tuple<std::string, std::string, bool, bool>> point_set_components(
    const PointSet1D& s) {
    std::vector<std::tuple<std::string, std::string, bool, bool>> out;
    for (const auto& c : s.components())
        out.emplace_back(format_rational(c.lo), format_rational(c.hi), c.lo_closed, c.hi_closed);
    return out;
}

}  // namespace

PYBIND11_MODULE(_wanderflow, m) {
    m.doc() = "prolongational analysis of wandering planar flows";

    py::register_exception<error>(m, "FlowError");

    // ---- orbit-space models -------------------------------------------------
    py::class_<FoliationModel>(m, "FoliationModel")
        .def("validate", &diag_list)
        .def("is_valid", [](const FoliationModel& m_) { return is_valid(validate(m_)); })
        .def("rank", [](const FoliationModel& m_) { return rank(m_); })
        .def("lambda1", &lambda1)
        .def("lambda1k", &lambda1k)
        .def("lambda2", &lambda2)
        .def("prolongation_edges",
             [](const FoliationModel& m_) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& p : prolongation_edges(m_).pairs) out.push_back(p);
                 return out;
             })
        .def("generalized_recurrent", &generalized_recurrent)
        .def("lyapunov_levels", &lyapunov_levels)
        .def("reachable",
             [](const FoliationModel& m_, const std::string& id) {
                 auto r = reachable_set(m_, id);
                 return std::make_pair(r.sigma, r.boundary);
             })
        .def("reverse",
             [](const FoliationModel& m_) { return wanderflow::reverse(m_); })
        .def("mirror", [](const FoliationModel& m_) { return wanderflow::mirror(m_); })
        .def("separatrices", [](const FoliationModel& m_) { return m_.separatrices; })
        .def("__eq__", [](const FoliationModel& a, const FoliationModel& b) { return a == b; })
        .def("__str__", &print_fol);

    m.def("parse_fol", &parse_fol, py::arg("text"), py::arg("filename") = "<input>");
    m.def("load_fol", &load_fol);
    m.def("print_fol", &print_fol);

    // ---- chordal systems ------------------------------------------------------
    py::class_<ChordalSystem>(m, "ChordalSystem")
        .def("elements", [](const ChordalSystem& cs) { return cs.elements.labels(); })
        .def("has_between", &ChordalSystem::has_between)
        .def("has_cyclic_pos", &ChordalSystem::has_cyclic_pos)
        .def("violations", [](const ChordalSystem& cs) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& v : validate_axioms(cs)) out.emplace_back(v.axiom, v.detail);
            return out;
        });

    m.def("derive_chordal", &derive_chordal);
    m.def("isomorphic", [](const ChordalSystem& a, const ChordalSystem& b) {
        return isomorphic(a, b);
    });
    m.def("anti_isomorphic", [](const ChordalSystem& a, const ChordalSystem& b) {
        return anti_isomorphic(a, b);
    });
    m.def("equivalent", [](const FoliationModel& a, const FoliationModel& b) {
        auto v = equivalent(a, b);
        return std::make_pair(to_string(v.kind), v.witness);
    });

    // ---- 1-D flows -------------------------------------------------------------
    py::class_<LineFlowSpec>(m, "LineFlowSpec")
        .def(py::init([](const std::string& topology, const std::vector<std::string>& fixed) {
                 std::vector<Rational> pts;
                 for (const auto& f : fixed) pts.push_back(parse_rational(f));
                 return LineFlowSpec(
                     topology == "circle" ? Topology::circle : Topology::interval, pts);
             }),
             py::arg("topology"), py::arg("fixed"))
        .def("fixed",
             [](const LineFlowSpec& s) {
                 std::vector<std::string> out;
                 for (const auto& f : s.fixed) out.push_back(format_rational(f));
                 return out;
             })
        .def("lambda1",
             [](const LineFlowSpec& s, const std::string& x) {
                 return lambda1_point(s, parse_rational(x));
             })
        .def("lambda1k", [](const LineFlowSpec& s, const std::string& x, unsigned k) {
            return lambda1k_point(s, parse_rational(x), k);
        })
        .def("nonwandering", [](const LineFlowSpec& s) { return nonwandering(s); });

    py::class_<PointSet1D>(m, "PointSet1D")
        .def("__str__", &PointSet1D::str)
        .def("is_empty", &PointSet1D::is_empty)
        .def("is_full_circle", &PointSet1D::is_full_circle)
        .def("contains",
             [](const PointSet1D& s, const std::string& x) {
                 return s.contains(parse_rational(x));
             })
        .def("components", &point_set_components);

    py::class_<RecursiveSpec>(m, "RecursiveSpec")
        .def("__str__", &print_rec_term)
        .def("rank", [](const RecursiveSpec& s) {
            auto r = stabilization_rank(s);
            return std::make_pair(r.rank.str(), r.derived_rule);
        })
        .def("truncate", [](const RecursiveSpec& s, unsigned depth) {
            return truncate(s, depth);
        });

    m.def("parse_rec_term", &parse_rec_term);
    m.def("load_lin", [](const std::string& path) {
        LinFile f = load_lin(path);
        return std::make_pair(f.spec, f.rec);
    });

    // ---- numerics ----------------------------------------------------------------
    py::class_<Vec2>(m, "Vec2")
        .def(py::init<>())
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__repr__", [](const Vec2& v) {
            return "(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });

    m.def("integrate",
          [](const std::string& field, double x, double y, double t) {
              Trajectory traj = integrate(field_from_name(field), {x, y}, 0.0, t);
              std::vector<std::tuple<double, double, double>> out;
              for (const auto& s : traj.steps) out.emplace_back(s.t, s.p.x, s.p.y);
              return out;
          },
          py::arg("field"), py::arg("x"), py::arg("y"), py::arg("t"));
    m.def("saddle_closed_form", [](int n, double t) {
        Vec2 p = saddle_closed_form(n, t);
        return std::make_pair(p.x, p.y);
    });
    m.def("first_integral", [](const std::string& field, double x, double y) {
        return first_integral_value(field_from_name(field), {x, y});
    });
    m.def("find_link",
          [](const std::string& field, double px, double py_, double qx, double qy, double eps,
             double T) -> py::object {
              auto rep = find_link(field_from_name(field), {px, py_}, {qx, qy}, eps, T);
              if (!rep.witness) return py::none();
              const auto& w = *rep.witness;
              return py::make_tuple(py::make_tuple(w.start.x, w.start.y), w.tau,
                                    py::make_tuple(w.end.x, w.end.y));
          });
    m.def("estimate_lambda1", [](const std::string& field, double x, double y) {
        auto est = estimate_lambda1(field_from_name(field), {x, y});
        std::vector<std::pair<double, double>> out;
        for (const auto& c : est.clusters) out.emplace_back(c.x, c.y);
        return out;
    });
    m.def("no_return", [](const std::string& field, double x, double y, double eps,
                          double horizon) {
        auto r = no_return_check(field_from_name(field), {x, y}, eps, horizon);
        return !r.returned;
    });
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "pnmetric/axioms.hpp"
#include "pnmetric/errors.hpp"
#include "pnmetric/fixed_point.hpp"
#include "pnmetric/io.hpp"
#include "pnmetric/sequence.hpp"
#include "pnmetric/topology.hpp"

namespace py = pybind11;
using namespace pnmetric;

// The module keeps a thin JSON-string surface: structured reports come back
// as serialized documents and the python package parses them into dicts.

namespace {

SelfMap build_map(const PartialNMetricSpace& space,
                  const std::map<std::string, std::string>& mapping) {
    return SelfMap::build(space, mapping);
}

}  // namespace

PYBIND11_MODULE(_pnmetric, m) {
    m.doc() = "Finite partial n-metric spaces: axioms, topology, sequences, fixed points";

    py::register_exception<Error>(m, "Error");

    py::class_<PartialNMetricSpace>(m, "Space")
        .def_static("from_json", [](const std::string& text) {
            try {
                return io::space_from_json(io::json::parse(text));
            } catch (const io::json::parse_error& e) {
                throw ParseError(e.what());
            }
        })
        .def("to_json",
             [](const PartialNMetricSpace& s) { return io::stable_dump(io::space_to_json(s)); })
        .def_property_readonly("n", &PartialNMetricSpace::arity)
        .def_property_readonly("points", &PartialNMetricSpace::points)
        .def("eval", &PartialNMetricSpace::eval)
        .def("self_distance",
             [](const PartialNMetricSpace& s, const std::string& x) {
                 return s.self_distance(s.point_index(x));
             })
        .def("mixed", [](const PartialNMetricSpace& s, const std::string& x,
                         const std::string& y) {
            return s.mixed(s.point_index(x), s.point_index(y));
        });

    m.def(
        "validate_json",
        [](const PartialNMetricSpace& space, const std::string& profile, double tol) {
            ValidationReport report = validate(space, profile_from_name(profile), {tol});
            return io::stable_dump(io::report_to_json(space, report));
        },
        py::arg("space"), py::arg("profile") = "partial_n_metric", py::arg("tol") = 1e-9);

    m.def(
        "convert",
        [](const std::string& partial_metric_json, int n, double tol) {
            io::json doc;
            try {
                doc = io::json::parse(partial_metric_json);
            } catch (const io::json::parse_error& e) {
                throw ParseError(e.what());
            }
            return from_partial_metric(io::partial_metric_from_json(doc), n, true, tol);
        },
        py::arg("partial_metric_json"), py::arg("n"), py::arg("tol") = 1e-9);

    m.def(
        "associated_metric_json",
        [](const PartialNMetricSpace& space, double tol) {
            validate(space, Profile::partial_n_metric, {tol});
            return io::stable_dump(io::metric_to_json(associated_metric(space)));
        },
        py::arg("space"), py::arg("tol") = 1e-9);

    m.def(
        "separation_json",
        [](const PartialNMetricSpace& space) {
            SeparationClass cls = separation_class(space);
            io::json doc = {{"is_T0", cls.is_T0},
                            {"is_T1", cls.is_T1},
                            {"t0_witnesses", cls.t0_witnesses},
                            {"t1_witnesses", cls.t1_witnesses}};
            return io::stable_dump(doc);
        },
        py::arg("space"));

    m.def(
        "sequence_json",
        [](const PartialNMetricSpace& space, const std::vector<std::string>& names, int window,
           double tol) {
            SequencePrefix prefix = SequencePrefix::from_names(space, names);
            CauchyVerdict cauchy = estimate_cauchy(prefix, window, tol);
            io::json doc;
            doc["cauchy"] = {{"holds_on_prefix", cauchy.holds_on_prefix},
                             {"window", cauchy.window},
                             {"residual", cauchy.residual}};
            if (cauchy.r_estimate) doc["cauchy"]["r_estimate"] = *cauchy.r_estimate;
            if (cauchy.holds_on_prefix) {
                auto special = special_limit_search(prefix, tol, window);
                doc["special_limit"] =
                    special ? io::json(space.point_name(*special)) : io::json();
            }
            return io::stable_dump(doc);
        },
        py::arg("space"), py::arg("names"), py::arg("window") = -1, py::arg("tol") = 1e-9);

    m.def(
        "solve_json",
        [](const PartialNMetricSpace& space, const std::map<std::string, std::string>& mapping,
           const std::string& start, bool strong, int max_steps, double tol) {
            SelfMap map = build_map(space, mapping);
            SolveConfig config;
            config.strong_mode = strong;
            config.max_steps = max_steps;
            config.tol = tol;
            validate(space, strong ? Profile::strong : Profile::partial_n_metric, {tol});
            FixedPointResult result =
                solve_fixed_point(space, map, space.point_index(start), config);
            return io::stable_dump(io::result_to_json(space, result));
        },
        py::arg("space"), py::arg("mapping"), py::arg("start"), py::arg("strong") = false,
        py::arg("max_steps") = 0, py::arg("tol") = 1e-9);

    m.def(
        "orbit_json",
        [](const PartialNMetricSpace& space, const std::map<std::string, std::string>& mapping,
           const std::string& start) {
            SelfMap map = build_map(space, mapping);
            OrbitTrace trace = orbit(map, space.point_index(start));
            return io::stable_dump(io::orbit_to_json(space, trace));
        },
        py::arg("space"), py::arg("mapping"), py::arg("start"));

    m.def(
        "certify_json",
        [](const PartialNMetricSpace& space, const std::map<std::string, std::string>& mapping,
           const std::string& start, const std::string& kind, double r, double lambda,
           double tol) {
            SelfMap map = build_map(space, mapping);
            int x0 = space.point_index(start);
            ContractivityCertificate cert =
                kind == "phi" ? certify_phi_contractive(map, x0, r, lambda, 2, tol)
                              : certify_r_contractive(map, x0, r, 2, tol);
            return io::stable_dump(io::certificate_to_json(cert));
        },
        py::arg("space"), py::arg("mapping"), py::arg("start"), py::arg("kind") = "r",
        py::arg("r") = 0.0, py::arg("lam") = 0.5, py::arg("tol") = 1e-9);
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hm/errors.hpp"
#include "hm/farey.hpp"
#include "hm/io.hpp"
#include "hm/pipeline.hpp"
#include "hm/resolution.hpp"
#include "hm/tube.hpp"

namespace py = pybind11;
using namespace hm;

namespace {

Rational fraction(const py::object& o) {
    auto f = py::module_::import("fractions").attr("Fraction")(o);
    return Rational(f.attr("numerator").cast<int64_t>(), f.attr("denominator").cast<int64_t>());
}

AnnulusArc arc(const std::pair<py::object, py::object>& a) { return {fraction(a.first), fraction(a.second)}; }

std::string pipeline(const std::string& corpus, int max_main, int threads) {
    SurfaceSig s;
    auto pairs = io::corpus_from_json(io::json::parse(corpus), &s);
    PipelineConfig cfg;
    cfg.max_main_distance = max_main;
    std::vector<PairResult> results;
    {
        py::gil_scoped_release release;
        results = run_pairs(pairs, cfg, threads > 0 ? threads : default_threads());
    }
    io::json records = io::json::array();
    for (auto& r : results) {
        io::json j{{"id", r.id}, {"built", r.built}, {"ok", r.ok()}};
        if (!r.built) {
            j["error"] = r.error;
            j["cap_exceeded"] = r.cap_exceeded;
        } else {
            j["hierarchy"] = io::to_json(r.H);
            j["resolution"] = io::to_json(r.R, false);
            j["model"] = io::to_json(r.M);
            j["constants"] = io::to_json(r.constants);
        }
        records.push_back(j);
    }
    auto a = aggregate(results);
    io::json agg{{"pairs", a.pairs}, {"built", a.built},   {"valid", a.valid},
                 {"capped", a.capped}, {"skipped", a.skipped}, {"failed", a.failed},
                 {"constants", io::to_json(a.constants)}};
    return io::json{{"format", io::kFormat}, {"surface", io::surface_str(s)}, {"records", records}, {"aggregate", agg}}
        .dump();
}

}  // namespace

PYBIND11_MODULE(_hiermodel, m) {
    py::register_exception<Error>(m, "HiermodelError", PyExc_ValueError);

    m.def("farey_distance", [](const std::string& a, const std::string& b) {
        return farey_distance(Slope::parse(a), Slope::parse(b));
    });
    m.def(
        "farey_geodesics",
        [](const std::string& a, const std::string& b, int64_t limit) {
            std::vector<std::vector<std::string>> out;
            for (auto& g : farey_geodesics(Slope::parse(a), Slope::parse(b), limit)) {
                out.emplace_back();
                for (auto& s : g) out.back().push_back(s.str());
            }
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("limit") = 1000);

    m.def("twist_number", [](const std::pair<py::object, py::object>& a, const std::pair<py::object, py::object>& b) {
        return twist_number(arc(a), arc(b)).value();
    });
    m.def("annulus_distance",
          [](const std::pair<py::object, py::object>& a, const std::pair<py::object, py::object>& b) {
              return annulus_distance(arc(a), arc(b));
          });

    m.def("tube_from_boundary", [](cplx omega, double t) {
        auto tp = tube_from_boundary({omega, t});
        return std::make_pair(tp.lambda, tp.r);
    });
    m.def("boundary_from_tube", [](cplx lambda, double r) {
        auto bd = boundary_from_tube({lambda, r});
        return std::make_pair(bd.omega, bd.t);
    });
    m.def("hyperbolic_distance", &hyperbolic_distance);

    m.def(
        "generate_corpus",
        [](const std::string& surface, int count, int walk, uint64_t seed) {
            auto s = parse_surface(surface);
            return io::corpus_json(s, walk, seed, generate_corpus(s, count, walk, seed)).dump();
        },
        py::arg("surface"), py::arg("count"), py::arg("walk"), py::arg("seed") = 1);
    m.def("run_pipeline", &pipeline, py::arg("corpus"), py::arg("max_main") = -1, py::arg("threads") = 0);
    m.def(
        "d_el_estimate",
        [](const std::string& surface, const std::string& mu, const std::string& nu, double K) {
            auto s = parse_surface(surface);
            return d_el_estimate(io::marking_from_json(s, io::json::parse(mu)),
                                 io::marking_from_json(s, io::json::parse(nu)), K);
        },
        py::arg("surface"), py::arg("mu"), py::arg("nu"), py::arg("K") = 4.0);
}

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ringcap/analytics.hpp"
#include "ringcap/combinatorics.hpp"
#include "ringcap/experiment.hpp"
#include "ringcap/oracle.hpp"
#include "ringcap/simulator.hpp"

namespace py = pybind11;
using namespace ringcap;

namespace {

FanoutPmf<double> fanout_from_dict(const std::map<int, double>& m, int n_nodes) {
    FanoutPmf<double> pmf(n_nodes);
    for (const auto& [l, p] : m) pmf.set(l, p);
    return pmf;
}

std::map<int, double> fanout_to_dict(const FanoutPmf<double>& pmf) {
    std::map<int, double> m;
    for (int l = 1; l < pmf.n_nodes(); ++l) {
        if (pmf[l] != 0) m[l] = pmf[l];
    }
    return m;
}

// exact values cross the boundary as "p/q" strings; the package wraps them in Fraction
std::string str(const Rational& r) { return r.get_str(); }

py::dict report_dict(const CapacityReport& r) {
    py::dict d;
    d["max_util_approx"] = r.max_util_approx;
    d["capacity"] = r.capacity;
    py::list crit;
    for (const auto& b : r.critical) crit.append(b);
    d["critical"] = crit;
    d["gamma_th1"] = r.thresholds.gamma_th1.as_double();
    d["gamma_th2"] = r.thresholds.gamma_th2.as_double();
    d["recommendation"] = to_string(r.recommendation);
    d["coarse_recommendation"] = to_string(r.coarse_recommendation);
    d["oc_bound"] = r.oc_bound;
    return d;
}

ExperimentConfig config_from(const py::object& cfg) {
    auto dumps = py::module_::import("json").attr("dumps");
    const std::string text = py::isinstance<py::str>(cfg) ? cfg.cast<std::string>() : dumps(cfg).cast<std::string>();
    return parse_config(nlohmann::json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "C++ core of ringcap";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<instance_too_large>(m, "InstanceTooLarge", PyExc_ValueError);

    py::enum_<Direction>(m, "Direction")
        .value("clockwise", Direction::clockwise)
        .value("counterclockwise", Direction::counterclockwise);

    py::enum_<TrafficClass>(m, "TrafficClass")
        .value("uniform", TrafficClass::uniform)
        .value("hotspot_dest", TrafficClass::hotspot_dest)
        .value("hotspot_src", TrafficClass::hotspot_src);

    py::enum_<RoutingStrategy>(m, "RoutingStrategy")
        .value("shortest_path", RoutingStrategy::shortest_path)
        .value("one_copy", RoutingStrategy::one_copy);

    py::class_<SegmentId>(m, "SegmentId")
        .def(py::init<Direction, int, int>(), py::arg("direction"), py::arg("index"), py::arg("wavelength"))
        .def_readonly("direction", &SegmentId::direction)
        .def_readonly("index", &SegmentId::index)
        .def_readonly("wavelength", &SegmentId::wavelength)
        .def("__eq__", [](const SegmentId& a, const SegmentId& b) { return a == b; })
        .def("__hash__", [](const SegmentId& s) {
            return py::hash(py::make_tuple(int(s.direction), s.index, s.wavelength));
        })
        .def("__repr__", [](const SegmentId& s) { return "SegmentId(" + to_string(s) + ")"; });

    py::class_<RingTopology>(m, "RingTopology")
        .def(py::init<int, int>(), py::arg("n_nodes"), py::arg("n_wavelengths"))
        .def_property_readonly("n_nodes", &RingTopology::n_nodes)
        .def_property_readonly("n_wavelengths", &RingTopology::n_wavelengths)
        .def_property_readonly("nodes_per_wavelength", &RingTopology::nodes_per_wavelength)
        .def("home_wavelength", &RingTopology::home_wavelength)
        .def("shift_down", &RingTopology::shift_down)
        .def("shift_up", &RingTopology::shift_up)
        .def("homed_nodes", &RingTopology::homed_nodes)
        .def("critical_segments", &RingTopology::critical_segments)
        .def("mirror", &RingTopology::mirror);

    py::class_<TrafficModel>(m, "TrafficModel")
        .def(py::init([](double a, double b, double g, const std::map<int, double>& mu,
                         const std::map<int, double>& nu, const std::map<int, double>& kappa, int n_nodes) {
                 TrafficModel t{a, b, g, fanout_from_dict(mu, n_nodes), fanout_from_dict(nu, n_nodes),
                                fanout_from_dict(kappa, n_nodes)};
                 t.validate(n_nodes);
                 return t;
             }),
             py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("mu"), py::arg("nu"), py::arg("kappa"),
             py::arg("n_nodes"))
        .def_readonly("alpha", &TrafficModel::alpha)
        .def_readonly("beta", &TrafficModel::beta)
        .def_readonly("gamma", &TrafficModel::gamma)
        .def_property_readonly("mu", [](const TrafficModel& t) { return fanout_to_dict(t.uniform); })
        .def_property_readonly("nu", [](const TrafficModel& t) { return fanout_to_dict(t.hotspot_dest); })
        .def_property_readonly("kappa", [](const TrafficModel& t) { return fanout_to_dict(t.hotspot_src); });

    m.def(
        "make_traffic",
        [](double a, double b, double g, const std::string& preset, int n_nodes) {
            auto t = make_traffic<double>(a, b, g, parse_fanout_preset(preset), n_nodes);
            t.validate(n_nodes);
            return t;
        },
        py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("preset"), py::arg("n_nodes"),
        "Traffic mix with the same named fanout (UC, MI, MC, BC, paper-fig2) for every class.");

    m.def("gap_pmf", py::overload_cast<int, int, int>(&gap_pmf), py::arg("l"), py::arg("n"), py::arg("k"));
    m.def(
        "largest_gap_pmf",
        [](int l, int n) {
            std::map<int, double> out;
            const auto q = largest_gap_pmf(l, n);
            for (int k = 1; k <= n; ++k) {
                if (q(k) != 0) out[k] = q(k);
            }
            return out;
        },
        py::arg("l"), py::arg("n"));
    m.def(
        "largest_gap_pmf_exact",
        [](int l, int n) {
            std::map<int, std::string> out;
            const auto q = largest_gap_pmf_exact(l, n);
            for (int k = 1; k <= n; ++k) {
                if (sgn(q(k)) != 0) out[k] = str(q(k));
            }
            return out;
        },
        py::arg("l"), py::arg("n"));
    m.def("expected_largest_gap", &expected_largest_gap, py::arg("l"), py::arg("n"));
    m.def("expected_largest_gap_exact", [](int l, int n) { return str(expected_largest_gap_exact(l, n)); },
          py::arg("l"), py::arg("n"));
    m.def(
        "wavelength_fanout_pmf",
        [](const RingTopology& r, int wl, TrafficClass cls, const TrafficModel& t) {
            return wavelength_fanout_pmf(r, wl, cls, t.fanout(cls)).pmf;
        },
        py::arg("topology"), py::arg("wavelength"), py::arg("traffic_class"), py::arg("traffic"),
        "Probabilities of 0..eta destinations on the wavelength for the class's fanout.");

    py::class_<CriticalBounds>(m, "CriticalBounds")
        .def_readonly("segment", &CriticalBounds::segment)
        .def_readonly("lower", &CriticalBounds::lower)
        .def_readonly("upper", &CriticalBounds::upper)
        .def_readonly("approx", &CriticalBounds::approx)
        .def("__repr__", [](const CriticalBounds& b) {
            std::ostringstream os;
            os << "CriticalBounds(" << to_string(b.segment) << ", lower=" << b.lower << ", upper=" << b.upper
               << ", approx=" << b.approx << ")";
            return os.str();
        });

    m.def("bounds_segment_1_1", &bounds_segment_1_1);
    m.def("bounds_segment_L_L", &bounds_segment_L_L);
    m.def("bounds_segment_N_L", &bounds_segment_N_L);
    m.def("thresholds", [](const RingTopology& r, const TrafficModel& t) {
        const auto th = thresholds(r, t);
        return py::make_tuple(th.gamma_th1.as_double(), th.gamma_th2.as_double());
    });
    m.def("oc_upper_bound", &oc_upper_bound);
    m.def("recommend_routing",
          [](const RingTopology& r, const TrafficModel& t) { return to_string(recommend_routing(r, t)); });
    m.def("max_utilization_sp",
          [](const RingTopology& r, const TrafficModel& t) { return report_dict(max_utilization_sp(r, t)); });

    py::class_<UtilizationMatrix>(m, "UtilizationMatrix")
        .def_property_readonly("samples", &UtilizationMatrix::samples)
        .def_property_readonly("converged", &UtilizationMatrix::converged)
        .def("estimate", &UtilizationMatrix::estimate)
        .def("ci_halfwidth", &UtilizationMatrix::ci_halfwidth)
        .def("count", &UtilizationMatrix::count);

    m.def(
        "estimate_utilization",
        [](const RingTopology& r, const TrafficModel& t, RoutingStrategy s, std::uint64_t seed,
           std::uint64_t min_samples, std::uint64_t max_samples, double relative_halfwidth, int threads) {
            StopRule rule;
            rule.min_samples = min_samples;
            rule.max_samples = max_samples;
            rule.relative_halfwidth = relative_halfwidth;
            rule.threads = threads;
            py::gil_scoped_release release;
            return estimate_utilization(r, t, s, seed, rule);
        },
        py::arg("topology"), py::arg("traffic"), py::arg("strategy") = RoutingStrategy::shortest_path,
        py::arg("seed") = 1, py::arg("min_samples") = 10'000, py::arg("max_samples") = 10'000'000,
        py::arg("relative_halfwidth") = 0.01, py::arg("threads") = 1);

    m.def("estimate_capacity", [](const UtilizationMatrix& mat) {
        const auto c = estimate_capacity(mat);
        py::dict d;
        d["argmax"] = c.argmax;
        d["max_util"] = c.max_util;
        d["ci_halfwidth"] = c.ci_halfwidth;
        d["capacity"] = c.capacity;
        return d;
    });

    m.def(
        "exact_utilization",
        [](const RingTopology& r, const std::string& a, const std::string& b, const std::string& g,
           const py::object& mu, const py::object& nu, const py::object& kappa, RoutingStrategy s) {
            const int N = r.n_nodes();
            auto q = [](const std::string& text) {
                Rational x{text};
                x.canonicalize();
                return x;
            };
            // preset name or {fanout: "p/q"}
            auto fanout = [&](const py::object& o) {
                if (py::isinstance<py::str>(o)) return make_fanout<Rational>(parse_fanout_preset(o.cast<std::string>()), N);
                FanoutPmf<Rational> pmf(N);
                for (const auto& [l, p] : o.cast<std::map<int, std::string>>()) pmf.set(l, q(p));
                return pmf;
            };
            ExactTrafficModel t{q(a), q(b), q(g), fanout(mu), fanout(nu), fanout(kappa)};
            t.validate(N);
            ExactUtilization<Rational> exact;
            {
                py::gil_scoped_release release;
                exact = exact_utilization(r, t, s);
            }
            py::dict out;
            for (Direction d : {Direction::clockwise, Direction::counterclockwise}) {
                for (int wl = 1; wl <= r.n_wavelengths(); ++wl) {
                    for (int n = 1; n <= N; ++n) out[py::make_tuple(d, n, wl)] = str(exact.at({d, n, wl}));
                }
            }
            return out;
        },
        py::arg("topology"), py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("mu"), py::arg("nu"),
        py::arg("kappa"), py::arg("strategy"));

    m.def(
        "run_sweep",
        [](const py::object& cfg) {
            const auto c = config_from(cfg);
            std::ostringstream os;
            {
                py::gil_scoped_release release;
                write_csv(os, run_sweep(c));
            }
            return os.str();
        },
        py::arg("config"), "Run a sweep from a config dict or JSON string; returns the CSV text.");
    m.def(
        "advise", [](const py::object& cfg) { return advise(config_from(cfg)); }, py::arg("config"));
}

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "netsync/analysis.hpp"
#include "netsync/config.hpp"
#include "netsync/errors.hpp"
#include "netsync/floquet.hpp"
#include "netsync/graph.hpp"
#include "netsync/integrate.hpp"
#include "netsync/models.hpp"

namespace py = pybind11;
using namespace netsync;

namespace {

using Rows = std::vector<std::vector<double>>;

Matrix matrix_from_rows(const Rows& rows) {
    if (rows.empty()) return Matrix();
    const std::size_t cols = rows.front().size();
    Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw InvalidArgument("ragged matrix rows");
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Rows rows_of(const Matrix& m) {
    Rows rows(m.rows(), std::vector<double>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    return rows;
}

GershgorinAxis axis_from(const std::string& axis) {
    if (axis == "row") return GershgorinAxis::Row;
    if (axis == "column") return GershgorinAxis::Column;
    throw InvalidArgument("axis must be 'row' or 'column'");
}

RunConfig config_from(const py::object& obj) {
    std::string text;
    if (py::isinstance<py::str>(obj))
        text = obj.cast<std::string>();
    else
        text = py::module_::import("json").attr("dumps")(obj).cast<std::string>();
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(doc);
}

py::dict floquet_dict(const FloquetResult& r, const MonodromyMatrix& m) {
    py::dict d;
    d["multipliers"] = r.multipliers;
    d["trivial_index"] = r.trivial_index;
    d["max_nontrivial_modulus"] = r.max_nontrivial_modulus;
    d["stable"] = r.stable;
    d["trivial_tolerance"] = r.trivial_tolerance;
    d["period"] = m.period;
    d["anchor"] = m.anchor;
    d["trace_integral"] = m.trace_integral;
    return d;
}

py::dict verdict_dict(const SyncVerdict& v) {
    py::dict d;
    switch (v.classification) {
        case SyncClass::Unsynchronized: d["classification"] = "unsynchronized"; break;
        case SyncClass::RemoteSync: d["classification"] = "remote_sync"; break;
        case SyncClass::CompleteSync: d["classification"] = "complete_sync"; break;
    }
    d["peripheral_residual"] = v.peripheral_residual;
    d["hub_residual"] = v.hub_residual;
    d["tolerance"] = v.tolerance;
    if (v.convergence_time)
        d["convergence_time"] = *v.convergence_time;
    else
        d["convergence_time"] = py::none();
    return d;
}

VariationalFn variational_for(const SystemSpec& spec) {
    switch (spec.model) {
        case ModelKind::FhnSingle:
            return [p = spec.fhn](const Vec& s) { return fhn_jacobian(s, p); };
        case ModelKind::FhnStar:
            return [p = spec.fhn, k = spec.star](const Vec& s) {
                return fhn_star_variational(s, p, k);
            };
        case ModelKind::FhnNetwork:
            return [p = spec.fhn, g = spec.graph, phi = spec.coupling](const Vec& s) {
                return fhn_network_variational(s, p, g, phi);
            };
        case ModelKind::WienBridge:
            return [p = spec.wien](const Vec& s) { return wien_jacobian(s, p); };
        default:
            throw InvalidArgument("no variational form for this model");
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "coupled-oscillator network simulation and stability toolkit";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<BlowUpError>(m, "BlowUpError");
    py::register_exception<NoPeriodError>(m, "NoPeriodError");
    py::register_exception<ConvergenceError>(m, "ConvergenceError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const InvalidArgument& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    py::class_<Graph>(m, "Graph")
        .def_readonly("n_nodes", &Graph::n_nodes)
        .def_readonly("edges", &Graph::edges)
        .def_readonly("labels", &Graph::labels)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n_nodes=" + std::to_string(g.n_nodes) + ", edges=" +
                   std::to_string(g.edges.size()) + ")";
        });

    m.def("build_star", &build_star, py::arg("n_peripheral"));
    m.def(
        "build_from_edges",
        [](int n, std::vector<std::pair<int, int>> edges) {
            return build_from_edges(n, std::move(edges));
        },
        py::arg("n_nodes"), py::arg("edges"));
    m.def("build_scale_free", &build_scale_free, py::arg("n_nodes"), py::arg("m"),
          py::arg("seed"));
    m.def("degree_sequence", &degree_sequence, py::arg("graph"));

    m.def(
        "laplacian", [](const Graph& g) { return rows_of(laplacian(g).matrix); },
        py::arg("graph"));
    m.def(
        "laplacian_spectrum",
        [](const Graph& g) {
            const SpectralDecomposition s = eigendecompose(laplacian(g));
            return py::make_tuple(s.eigenvalues, rows_of(s.eigenvectors));
        },
        py::arg("graph"), "eigenvalues (ascending) and eigenvector matrix (columns)");
    m.def(
        "symmetric_eigenvalues",
        [](const Rows& rows) { return jacobi_eigensolve(matrix_from_rows(rows)).eigenvalues; },
        py::arg("matrix"));
    m.def(
        "general_eigenvalues",
        [](const Rows& rows) { return general_eigenvalues(matrix_from_rows(rows)); },
        py::arg("matrix"));
    m.def(
        "gershgorin_discs",
        [](const Rows& rows, const std::string& axis) {
            std::vector<std::pair<std::complex<double>, double>> out;
            for (const auto& d : gershgorin_discs(matrix_from_rows(rows), axis_from(axis)))
                out.emplace_back(d.center, d.radius);
            return out;
        },
        py::arg("matrix"), py::arg("axis") = "row", "list of (center, radius) pairs");
    m.def(
        "discs_bound_left_half_plane",
        [](const Rows& rows, const std::string& axis) {
            return discs_bound_left_half_plane(
                gershgorin_discs(matrix_from_rows(rows), axis_from(axis)));
        },
        py::arg("matrix"), py::arg("axis") = "row");

    py::class_<Trajectory>(m, "Trajectory")
        .def_property_readonly("times", [](const Trajectory& t) { return t.times; })
        .def_property_readonly("states", [](const Trajectory& t) { return rows_of(t.states); })
        .def("state_at_time", &Trajectory::state_at_time, py::arg("t"))
        .def("__len__", [](const Trajectory& t) { return t.samples(); });

    m.def(
        "simulate",
        [](const py::object& config) {
            const RunConfig rc = config_from(config);
            return integrate(rc.spec, rc.initial_state, rc.integrator);
        },
        py::arg("config"), "integrate the model described by a run-config (dict or JSON text)");
    m.def(
        "phase_of", [](const Trajectory& t, int node) { return phase_of(t, node); },
        py::arg("trajectory"), py::arg("node"));
    m.def("wrap_phase", &wrap_phase, py::arg("angle"));
    m.def(
        "detect_sync",
        [](const Trajectory& t, int hub, double tolerance) {
            return verdict_dict(detect_sync(t, hub, tolerance));
        },
        py::arg("trajectory"), py::arg("hub") = 0, py::arg("tolerance") = 1e-2);
    m.def(
        "sync_error",
        [](const Trajectory& t, const std::vector<int>& nodes) { return sync_error(t, nodes); },
        py::arg("trajectory"), py::arg("nodes"));

    m.def(
        "estimate_period",
        [](const Trajectory& t, int component) {
            const PeriodEstimate e = estimate_period(t, component);
            py::dict d;
            d["period"] = e.period;
            d["spacing_stddev"] = e.spacing_stddev;
            d["n_crossings"] = e.n_crossings;
            d["level"] = e.level;
            return d;
        },
        py::arg("trajectory"), py::arg("component") = 0);

    m.def(
        "floquet",
        [](const py::object& config) {
            const RunConfig rc = config_from(config);
            const LimitCycle cycle = settle_to_limit_cycle(rc.spec, rc.initial_state, rc.integrator);
            const MonodromyMatrix mono = monodromy(variational_for(rc.spec), cycle.anchor,
                                                   cycle.period, rc.spec, rc.integrator);
            return floquet_dict(floquet_multipliers(mono), mono);
        },
        py::arg("config"), "settle onto the limit cycle and return its multipliers");

    py::class_<MsfCurve>(m, "MsfCurve")
        .def_property_readonly("period", [](const MsfCurve& c) { return c.period; })
        .def_property_readonly("anchor", [](const MsfCurve& c) { return c.anchor; })
        .def_property_readonly("points",
                               [](const MsfCurve& c) {
                                   py::list out;
                                   for (const auto& p : c.points) {
                                       py::dict d;
                                       d["gamma"] = p.gamma;
                                       d["max_modulus"] = p.max_modulus;
                                       d["msf"] = p.msf;
                                       d["diverged"] = p.diverged;
                                       out.append(d);
                                   }
                                   return out;
                               })
        .def("msf_at", &MsfCurve::msf_at, py::arg("gamma"));

    m.def(
        "msf_sweep",
        [](const py::object& config, double gamma_min, double gamma_max, int steps) {
            const RunConfig rc = config_from(config);
            if (rc.spec.model != ModelKind::FhnSingle)
                throw ConfigError("msf_sweep: config must select model fhn_single");
            return msf_sweep(rc.spec.fhn, gamma_min, gamma_max, steps, rc.integrator);
        },
        py::arg("config"), py::arg("gamma_min"), py::arg("gamma_max"), py::arg("steps"));
    m.def(
        "evaluate_network_msf",
        [](const MsfCurve& curve, Vec eigenvalues, double phi) {
            const NetworkMsfReport r = evaluate_network_msf(curve, std::move(eigenvalues), phi);
            py::dict d;
            switch (r.verdict) {
                case NetworkVerdict::Stable: d["verdict"] = "stable"; break;
                case NetworkVerdict::Marginal: d["verdict"] = "marginal"; break;
                case NetworkVerdict::Unstable: d["verdict"] = "unstable"; break;
            }
            d["stable"] = r.stable;
            d["phi"] = r.phi;
            py::list modes;
            for (const auto& mode : r.modes) {
                py::dict md;
                md["eigenvalue"] = mode.eigenvalue;
                md["gamma"] = mode.gamma;
                md["msf"] = mode.msf;
                md["max_modulus"] = mode.max_modulus;
                md["diverged"] = mode.diverged;
                md["stable"] = mode.stable;
                md["marginal"] = mode.marginal;
                modes.append(md);
            }
            d["modes"] = modes;
            return d;
        },
        py::arg("curve"), py::arg("laplacian_eigenvalues"), py::arg("phi"));

    m.def(
        "find_equilibrium",
        [](double omega_hub, double omega_peripheral, Vec incoming, Vec outgoing, Vec guess) {
            KuramotoStarParams p;
            p.omega_hub = omega_hub;
            p.omega_peripheral = omega_peripheral;
            p.incoming = std::move(incoming);
            p.outgoing = std::move(outgoing);
            const EquilibriumResult r = find_equilibrium(p, guess);
            py::dict d;
            d["x_star"] = r.x_star;
            d["x_star_mod_2pi"] = r.x_star_mod_2pi;
            d["residual"] = r.residual;
            d["jacobian_eigenvalues"] = r.jacobian_eigenvalues;
            d["locally_stable"] = r.locally_stable;
            d["iterations"] = r.iterations;
            return d;
        },
        py::arg("omega_hub"), py::arg("omega_peripheral"), py::arg("incoming"),
        py::arg("outgoing"), py::arg("guess"),
        "damped-Newton equilibrium of the reduced star phase model");

    m.def(
        "wien_predictions",
        [](double omega0, double g0, double k_nl) {
            WienParams p;
            p.omega0 = omega0;
            p.g0 = g0;
            p.k_nl = k_nl;
            p.validate();
            py::dict d;
            d["frequency_hz"] = wien_natural_frequency(p);
            if (g0 > 3.0 && k_nl > 0.0) d["amplitude"] = wien_predicted_amplitude(p);
            return d;
        },
        py::arg("omega0"), py::arg("g0"), py::arg("k_nl"));
}

#include "netsync/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>

#include "netsync/analysis.hpp"
#include "netsync/config.hpp"
#include "netsync/errors.hpp"
#include "netsync/floquet.hpp"
#include "netsync/graph.hpp"
#include "netsync/integrate.hpp"
#include "netsync/io.hpp"
#include "netsync/models.hpp"

namespace netsync::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path resolve_out_dir(const std::string& flag_out, const std::string& config_out) {
    if (!flag_out.empty()) return flag_out;
    if (!config_out.empty()) return config_out;
    if (const char* env = std::getenv("NETSYNC_OUT"); env && *env) return env;
    return ".";
}

void emit(const fs::path& dir, const std::string& name, const std::string& content,
          std::ostream& out) {
    const fs::path path = dir / name;
    io::write_file(path, content);
    out << "wrote " << path.string() << "\n";
}

void emit_json(const fs::path& dir, const std::string& name, const json& doc,
               std::ostream& out) {
    emit(dir, name, doc.dump(2) + "\n", out);
}

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    return pairs;
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

// ---- subcommand bodies ----------------------------------------------------

int cmd_topo(const std::string& star_arg, const std::string& edges_file,
             const std::string& scale_free_arg, std::uint64_t seed, const std::string& out_flag,
             std::ostream& out) {
    int given = 0;
    if (!star_arg.empty()) ++given;
    if (!edges_file.empty()) ++given;
    if (!scale_free_arg.empty()) ++given;
    if (given != 1)
        throw InvalidArgument("topo: give exactly one of --star, --edges, --scale-free");

    Graph g;
    json invocation{{"command", "topo"}};
    if (!star_arg.empty()) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(star_arg, &used);
        } catch (const std::exception&) {
            used = std::string::npos;
        }
        if (used != star_arg.size())
            throw InvalidArgument("topo: --star expects an integer");
        g = build_star(n);
        invocation["star"] = n;
    } else if (!edges_file.empty()) {
        json doc;
        try {
            doc = json::parse(io::read_file(edges_file));
        } catch (const json::parse_error& e) {
            throw InvalidArgument("topo: " + edges_file + " is not valid JSON: " + e.what());
        }
        g = io::graph_from_json(doc);
        invocation["edges_file"] = edges_file;
    } else {
        const auto comma = scale_free_arg.find(',');
        if (comma == std::string::npos)
            throw InvalidArgument("topo: --scale-free expects N,M");
        int n = 0, m = 0;
        try {
            n = std::stoi(scale_free_arg.substr(0, comma));
            m = std::stoi(scale_free_arg.substr(comma + 1));
        } catch (const std::exception&) {
            throw InvalidArgument("topo: --scale-free expects N,M with integers");
        }
        g = build_scale_free(n, m, seed);
        invocation["scale_free"] = {{"n", n}, {"m", m}, {"seed", seed}};
    }

    const LaplacianMatrix lap = laplacian(g);
    const SpectralDecomposition spec = eigendecompose(lap);

    const fs::path dir = resolve_out_dir(out_flag, "");
    json graph_doc = io::graph_json(g);
    graph_doc["config"] = invocation;
    emit_json(dir, "graph.json", graph_doc, out);
    emit(dir, "laplacian.csv", io::matrix_csv(lap.matrix), out);
    json spectrum_doc = io::spectrum_json(spec);
    spectrum_doc["config"] = invocation;
    emit_json(dir, "spectrum.json", spectrum_doc, out);

    out << "eigenvalues:";
    for (double ev : spec.eigenvalues) out << " " << io::format_double(ev);
    out << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_file, const std::string& out_flag,
                 std::ostream& out) {
    const RunConfig rc = load_run_config(config_file);
    const fs::path dir = resolve_out_dir(out_flag, rc.output_dir);

    const Trajectory traj = integrate(rc.spec, rc.initial_state, rc.integrator);
    emit(dir, "traj.csv", io::trajectory_csv(traj), out);

    const int nodes = rc.spec.node_count();
    if (nodes < 2) {
        out << "single-oscillator model: no synchronization analysis\n";
        return 0;
    }

    const auto pairs = all_pairs(nodes);
    const Matrix diffs = phase_differences(traj, pairs);
    emit(dir, "phase_diffs.csv", io::phase_diffs_csv(traj, pairs, diffs), out);

    std::vector<int> node_list(nodes);
    for (int i = 0; i < nodes; ++i) node_list[i] = i;
    const Vec errs = sync_error(traj, node_list);
    emit(dir, "sync_error.csv", io::series_csv(traj.times, errs), out);

    const SyncVerdict v = detect_sync(traj, rc.analysis.hub, rc.analysis.sync_tolerance);
    json verdict_doc = io::sync_verdict_json(v);
    verdict_doc["sync_error_final"] = errs.back();
    verdict_doc["config"] = rc.resolved;
    emit_json(dir, "verdict.json", verdict_doc, out);

    out << "verdict: " << io::sync_class_name(v.classification) << " (peripheral residual "
        << io::format_double(v.peripheral_residual) << ", hub residual "
        << io::format_double(v.hub_residual) << ")\n";
    return 0;
}

int cmd_floquet(const std::string& config_file, const std::string& out_flag, std::ostream& out) {
    const RunConfig rc = load_run_config(config_file);
    if (rc.spec.model != ModelKind::FhnSingle && rc.spec.model != ModelKind::FhnStar &&
        rc.spec.model != ModelKind::WienBridge)
        throw ConfigError("floquet: model must be fhn_single, fhn_star, or wien_bridge");
    const fs::path dir = resolve_out_dir(out_flag, rc.output_dir);

    const LimitCycle cycle = settle_to_limit_cycle(rc.spec, rc.initial_state, rc.integrator);
    const MonodromyMatrix mono =
        monodromy(variational_for(rc.spec), cycle.anchor, cycle.period, rc.spec, rc.integrator);
    const FloquetResult fr = floquet_multipliers(mono);

    json doc = io::floquet_json(fr, mono);
    doc["config"] = rc.resolved;
    emit_json(dir, "floquet.json", doc, out);

    out << "period " << io::format_double(cycle.period) << "; "
        << (fr.stable ? "stable" : "not stable") << "; trivial multiplier index "
        << fr.trivial_index << "; max nontrivial modulus "
        << io::format_double(fr.max_nontrivial_modulus) << "\n";
    return 0;
}

int cmd_msf(const std::string& config_file, double gamma_min, double gamma_max, int steps,
            const std::string& graph_file, double phi, bool phi_given,
            const std::string& out_flag, std::ostream& out) {
    const RunConfig rc = load_run_config(config_file);
    if (rc.spec.model != ModelKind::FhnSingle)
        throw ConfigError("msf: config must select model fhn_single (the isolated cell)");
    if (graph_file.empty() != !phi_given)
        throw InvalidArgument("msf: --graph and --phi must be given together");
    const fs::path dir = resolve_out_dir(out_flag, rc.output_dir);

    const MsfCurve curve = msf_sweep(rc.spec.fhn, gamma_min, gamma_max, steps, rc.integrator);
    emit(dir, "msf.csv", io::msf_csv(curve), out);

    int negative = 0, diverged = 0;
    for (const auto& p : curve.points) {
        if (p.diverged)
            ++diverged;
        else if (p.msf < 0.0)
            ++negative;
    }
    out << "msf: " << curve.points.size() << " points on [" << io::format_double(gamma_min)
        << ", " << io::format_double(gamma_max) << "], period "
        << io::format_double(curve.period) << ", " << negative << " stable points, " << diverged
        << " diverged\n";

    if (!graph_file.empty()) {
        json gdoc;
        try {
            gdoc = json::parse(io::read_file(graph_file));
        } catch (const json::parse_error& e) {
            throw InvalidArgument("msf: " + graph_file + " is not valid JSON: " + e.what());
        }
        const Graph g = io::graph_from_json(gdoc);
        const SpectralDecomposition spec = eigendecompose(laplacian(g));
        const NetworkMsfReport report = evaluate_network_msf(curve, spec.eigenvalues, phi);
        json doc = io::network_report_json(report);
        doc["laplacian_eigenvalues"] = spec.eigenvalues;
        doc["config"] = rc.resolved;
        doc["config"]["graph_file"] = graph_file;
        doc["config"]["phi"] = phi;
        emit_json(dir, "network_report.json", doc, out);
        out << "network verdict: " << io::network_verdict_name(report.verdict) << "\n";
    }
    return 0;
}

int cmd_gershgorin(const std::string& matrix_file, const std::string& axis,
                   const std::string& out_flag, std::ostream& out) {
    const Matrix m = io::matrix_from_csv(io::read_file(matrix_file));
    const GershgorinAxis ax = axis == "column" ? GershgorinAxis::Column : GershgorinAxis::Row;
    const auto discs = gershgorin_discs(m, ax); // throws on non-square input

    // self-check: the spectrum must sit inside the disc union
    const auto eigenvalues = general_eigenvalues(m);
    bool inside = true;
    for (const auto& ev : eigenvalues) {
        bool in_any = false;
        for (const auto& d : discs)
            if (std::abs(ev - d.center) <= d.radius + 1e-9) in_any = true;
        if (!in_any) inside = false;
    }

    json doc = io::discs_json(discs, ax);
    json evs = json::array();
    for (const auto& ev : eigenvalues) evs.push_back(json::array({ev.real(), ev.imag()}));
    doc["eigenvalues"] = evs;
    doc["eigenvalues_inside_union"] = inside;
    doc["config"] = {{"command", "gershgorin"}, {"matrix_file", matrix_file}, {"axis", axis}};

    const fs::path dir = resolve_out_dir(out_flag, "");
    emit_json(dir, "gershgorin.json", doc, out);
    out << "discs bound left half-plane: "
        << (discs_bound_left_half_plane(discs) ? "yes" : "no") << "\n";
    return 0;
}

struct WienMeasurement {
    double frequency_hz;
    double period;
    double amplitude;
};

WienMeasurement measure_wien(const Trajectory& traj) {
    const PeriodEstimate est = estimate_period(traj, 0);
    const std::size_t start = traj.first_post_transient_index();
    double vmin = traj.states(start, 0), vmax = vmin;
    for (std::size_t k = start; k < traj.samples(); ++k) {
        vmin = std::min(vmin, traj.states(k, 0));
        vmax = std::max(vmax, traj.states(k, 0));
    }
    return {1.0 / est.period, est.period, 0.5 * (vmax - vmin)};
}

int cmd_wien(const std::string& config_file, const std::string& out_flag, std::ostream& out) {
    const RunConfig rc = load_run_config(config_file);
    if (rc.spec.model != ModelKind::WienBridge)
        throw ConfigError("wien: config must select model wien_bridge");
    const fs::path dir = resolve_out_dir(out_flag, rc.output_dir);

    const Trajectory traj = integrate(rc.spec, rc.initial_state, rc.integrator);
    emit(dir, "traj.csv", io::trajectory_csv(traj), out);

    const WienMeasurement m = measure_wien(traj); // NoPeriodError -> exit 4 (decayed to rest)
    json doc{{"frequency_hz", m.frequency_hz},
             {"period", m.period},
             {"amplitude", m.amplitude},
             {"predicted_frequency_hz", wien_natural_frequency(rc.spec.wien)}};
    if (rc.spec.wien.g0 > 3.0 && rc.spec.wien.k_nl > 0.0)
        doc["predicted_amplitude"] = wien_predicted_amplitude(rc.spec.wien);
    doc["config"] = rc.resolved;
    emit_json(dir, "wien.json", doc, out);

    out << "frequency " << io::format_double(m.frequency_hz) << " Hz; amplitude "
        << io::format_double(m.amplitude) << "\n";
    return 0;
}

// ---- reproduce-paper -------------------------------------------------------

struct CheckRow {
    bool pass;
    std::string label;
    std::string detail;
};

void add_row(std::vector<CheckRow>& rows, bool pass, std::string label, std::string detail) {
    rows.push_back({pass, std::move(label), std::move(detail)});
}

std::string approx(double measured, double target, double tol) {
    std::ostringstream os;
    os << "measured " << io::format_double(measured) << ", target "
       << io::format_double(target) << " +/- " << io::format_double(tol);
    return os.str();
}

int cmd_reproduce(const std::string& out_flag, std::ostream& out) {
    const fs::path base = resolve_out_dir(out_flag, "");
    std::vector<CheckRow> rows;

    // --- star phase model, all-to-hub coupling (figure-2 setting) ----------
    {
        const json cfg = {
            {"model", "kuramoto_star"},
            {"params",
             {{"omega_hub", 1.0}, {"omega_peripheral", 1.0}, {"incoming", {1.0, 1.0, 1.0}},
              {"outgoing", {1.0, 1.0, 1.0}}}},
            {"integrator", {{"dt", 1e-3}, {"t_end", 60.0}, {"transient", 20.0}}},
            {"analysis", {{"hub", 0}, {"sync_tolerance", 1e-2}}},
            {"initial_state",
             {{"seed", 1}, {"jitter", std::numbers::pi / 4.0}}},
            {"seed", 1}};
        const fs::path dir = base / "fig2_kuramoto_star";
        io::write_file(dir / "config.json", cfg.dump(2) + "\n");
        const RunConfig rc = parse_run_config(cfg);
        const Trajectory traj = integrate(rc.spec, rc.initial_state, rc.integrator);
        emit(dir, "traj.csv", io::trajectory_csv(traj), out);
        const auto pairs = all_pairs(rc.spec.node_count());
        emit(dir, "phase_diffs.csv",
             io::phase_diffs_csv(traj, pairs, phase_differences(traj, pairs)), out);
        const SyncVerdict v = detect_sync(traj, rc.analysis.hub, rc.analysis.sync_tolerance);
        json vdoc = io::sync_verdict_json(v);
        vdoc["config"] = rc.resolved;
        emit_json(dir, "verdict.json", vdoc, out);

        add_row(rows, v.classification == SyncClass::CompleteSync,
                "star phases: complete synchronization",
                "verdict " + io::sync_class_name(v.classification));
        const double worst = std::max(v.peripheral_residual, v.hub_residual);
        add_row(rows, worst < 1e-2, "star phases: pairwise differences below 1e-2 rad",
                "worst residual " + io::format_double(worst));
    }

    // --- Gershgorin discs of the reduced-model Jacobian (figure-3 setting) -
    {
        const fs::path dir = base / "fig3_gershgorin";
        KuramotoStarParams kp;
        kp.incoming = {1.0, 1.0, 1.0};
        kp.outgoing = {1.0, 1.0, 1.0};
        const double tau = 2.0 * std::numbers::pi;
        const Matrix j = kuramoto_reduced_jacobian({tau, tau, tau}, kp);
        emit(dir, "jacobian.csv", io::matrix_csv(j), out);
        const auto discs = gershgorin_discs(j, GershgorinAxis::Row);
        const auto evs = general_eigenvalues(j);
        bool inside = true;
        for (const auto& ev : evs) {
            bool in_any = false;
            for (const auto& d : discs)
                if (std::abs(ev - d.center) <= d.radius + 1e-9) in_any = true;
            inside = inside && in_any;
        }
        json doc = io::discs_json(discs, GershgorinAxis::Row);
        json evjson = json::array();
        for (const auto& ev : evs) evjson.push_back(json::array({ev.real(), ev.imag()}));
        doc["eigenvalues"] = evjson;
        doc["eigenvalues_inside_union"] = inside;
        doc["config"] = {{"command", "reproduce-paper"}, {"section", "fig3"}};
        emit_json(dir, "gershgorin.json", doc, out);

        add_row(rows, discs_bound_left_half_plane(discs),
                "jacobian discs: all within left half-plane", "centers -2, radii 2");
        add_row(rows, inside, "jacobian spectrum: inside disc union", "eigenvalues -4, -1, -1");
    }

    // --- planar star multipliers (section-III setting) ----------------------
    {
        const json cfg = {{"model", "fhn_star"},
                          {"params", json::object()},
                          {"star_coupling",
                           {{"incoming", {0.115, 0.115}}, {"outgoing", {0.115, 0.115}}}},
                          {"integrator", {{"dt", 1e-3}, {"t_end", 400.0}, {"transient", 200.0}}}};
        const fs::path dir = base / "sec3_star_floquet";
        io::write_file(dir / "config.json", cfg.dump(2) + "\n");
        const RunConfig rc = parse_run_config(cfg);
        const LimitCycle cycle =
            settle_to_limit_cycle(rc.spec, rc.initial_state, rc.integrator);
        const MonodromyMatrix mono = monodromy(variational_for(rc.spec), cycle.anchor,
                                               cycle.period, rc.spec, rc.integrator);
        const FloquetResult fr = floquet_multipliers(mono);
        json doc = io::floquet_json(fr, mono);
        doc["config"] = rc.resolved;
        emit_json(dir, "floquet.json", doc, out);

        int near_one = 0;
        for (const auto& mu : fr.multipliers)
            if (std::abs(mu - std::complex<double>(1.0, 0.0)) <= kTrivialTolerance) ++near_one;
        add_row(rows, near_one == 1, "star cycle: exactly one trivial multiplier",
                std::to_string(near_one) + " multiplier(s) within 0.05 of 1");
        add_row(rows, fr.stable && fr.trivial_index >= 0,
                "star cycle: all nontrivial moduli below 1",
                "max nontrivial modulus " + io::format_double(fr.max_nontrivial_modulus));
    }

    // --- five-node network: spectrum, MSF, simulation (section-IV setting) -
    {
        const fs::path dir = base / "sec4_network_msf";
        const Graph g = build_from_edges(5, {{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 4}});
        emit_json(dir, "graph.json", io::graph_json(g), out);
        const LaplacianMatrix lap = laplacian(g);
        emit(dir, "laplacian.csv", io::matrix_csv(lap.matrix), out);
        const SpectralDecomposition spec = eigendecompose(lap);
        emit_json(dir, "spectrum.json", io::spectrum_json(spec), out);

        const Vec reference{0.0, 0.8, 2.0, 2.6, 4.4};
        double worst_dev = 0.0;
        int worst_idx = 0;
        for (std::size_t k = 0; k < reference.size(); ++k) {
            const double dev = std::abs(spec.eigenvalues[k] - reference[k]);
            if (dev > worst_dev) {
                worst_dev = dev;
                worst_idx = static_cast<int>(k);
            }
        }
        std::ostringstream sd;
        sd << "worst |lambda_" << worst_idx + 1 << " - "
           << io::format_double(reference[worst_idx])
           << "| = " << io::format_double(worst_dev) << " (computed "
           << io::format_double(spec.eigenvalues[worst_idx]) << ")";
        add_row(rows, worst_dev <= 0.05,
                "five-node spectrum: within 0.05 of {0, 0.8, 2.0, 2.6, 4.4}", sd.str());

        const json cfg = {{"model", "fhn_single"},
                          {"params", json::object()},
                          {"integrator", {{"dt", 1e-3}, {"t_end", 400.0}, {"transient", 200.0}}}};
        io::write_file(dir / "msf_config.json", cfg.dump(2) + "\n");
        const RunConfig rc = parse_run_config(cfg);
        const MsfCurve curve = msf_sweep(rc.spec.fhn, -4.0, 4.0, 81, rc.integrator);
        emit(dir, "msf.csv", io::msf_csv(curve), out);

        double msf_at_zero = std::numeric_limits<double>::quiet_NaN();
        bool all_pos_stable = true, all_neg_unstable = true;
        for (const auto& p : curve.points) {
            if (std::abs(p.gamma) < 1e-12) msf_at_zero = p.msf;
            if (p.gamma > 1e-12 && (p.diverged || p.msf >= 0.0)) all_pos_stable = false;
            if (p.gamma < -0.05 && !p.diverged && p.max_modulus <= 1.0)
                all_neg_unstable = false;
        }
        add_row(rows, std::isfinite(msf_at_zero) && std::abs(msf_at_zero) <= 5e-3,
                "msf grid: msf(0) = 0 within 5e-3", "msf(0) = " + io::format_double(msf_at_zero));
        add_row(rows, all_pos_stable, "msf grid: msf < 0 for every sampled gamma > 0", "");
        add_row(rows, all_neg_unstable,
                "msf grid: max modulus > 1 for every sampled gamma < -0.05", "");

        SystemSpec cell;
        cell.model = ModelKind::FhnSingle;
        cell.fhn = rc.spec.fhn;
        const MonodromyMatrix m506 = monodromy(
            [&](const Vec& s) { return msf_block(s, rc.spec.fhn, 0.506); }, curve.anchor,
            curve.period, cell, rc.integrator);
        const FloquetResult fr506 = floquet_multipliers(m506);
        add_row(rows, std::abs(fr506.max_nontrivial_modulus - 0.24) <= 0.10,
                "transverse block at gamma = 0.506: max modulus 0.24 within 0.10",
                approx(fr506.max_nontrivial_modulus, 0.24, 0.10));

        const NetworkMsfReport report = evaluate_network_msf(curve, spec.eigenvalues, 0.115);
        json rdoc = io::network_report_json(report);
        rdoc["laplacian_eigenvalues"] = spec.eigenvalues;
        rdoc["config"] = {{"command", "reproduce-paper"}, {"section", "sec4"}, {"phi", 0.115}};
        emit_json(dir, "network_report.json", rdoc, out);
        add_row(rows, report.stable, "network report: stable at phi = 0.115",
                "verdict " + io::network_verdict_name(report.verdict));

        const json sim_cfg = {
            {"model", "fhn_network"},
            {"params", json::object()},
            {"graph", {{"n", 5}, {"edges", {{0, 1}, {0, 3}, {1, 2}, {1, 4}, {3, 4}}}}},
            {"coupling", 0.115},
            {"integrator", {{"dt", 1e-3}, {"t_end", 300.0}, {"transient", 200.0}}},
            {"initial_state", {{"seed", 2}, {"jitter", 1.0}}},
            {"seed", 2}};
        io::write_file(dir / "sim_config.json", sim_cfg.dump(2) + "\n");
        const RunConfig sim_rc = parse_run_config(sim_cfg);
        const Trajectory traj = integrate(sim_rc.spec, sim_rc.initial_state, sim_rc.integrator);
        const Vec errs = sync_error(traj, {0, 1, 2, 3, 4});
        emit(dir, "sync_error.csv", io::series_csv(traj.times, errs), out);
        add_row(rows, errs.back() < 1e-3, "five-node simulation: sync error ends below 1e-3",
                "final " + io::format_double(errs.back()));
    }

    // --- bridge oscillator (section-V setting) ------------------------------
    {
        const json cfg = {{"model", "wien_bridge"},
                          {"params", {{"omega0", 1000.0}, {"g0", 3.2}, {"k_nl", 1.0}}},
                          {"integrator", {{"dt", 1e-6}, {"t_end", 0.3}, {"transient", 0.2}}},
                          {"initial_state", {0.1, 0.0}}};
        const fs::path dir = base / "sec5_wien";
        io::write_file(dir / "config.json", cfg.dump(2) + "\n");
        const RunConfig rc = parse_run_config(cfg);
        const Trajectory traj = integrate(rc.spec, rc.initial_state, rc.integrator);
        emit(dir, "traj.csv", io::trajectory_csv(traj), out);
        const WienMeasurement m = measure_wien(traj);
        json doc{{"frequency_hz", m.frequency_hz},
                 {"period", m.period},
                 {"amplitude", m.amplitude},
                 {"predicted_frequency_hz", wien_natural_frequency(rc.spec.wien)},
                 {"predicted_amplitude", wien_predicted_amplitude(rc.spec.wien)},
                 {"config", rc.resolved}};
        emit_json(dir, "wien.json", doc, out);

        const double f0 = wien_natural_frequency(rc.spec.wien);
        add_row(rows, std::abs(m.frequency_hz - f0) <= 0.05 * f0,
                "bridge: frequency within 5% of 159.155 Hz",
                approx(m.frequency_hz, f0, 0.05 * f0));
        const double a0 = wien_predicted_amplitude(rc.spec.wien);
        add_row(rows, std::abs(m.amplitude - a0) <= 0.10 * a0,
                "bridge: amplitude within 10% of 2 sqrt((g0-3)/k_nl)",
                approx(m.amplitude, a0, 0.10 * a0));
    }

    int failures = 0;
    out << "\n";
    for (const auto& r : rows) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.label;
        if (!r.detail.empty()) out << " -- " << r.detail;
        out << "\n";
        if (!r.pass) ++failures;
    }
    out << "\n"
        << (rows.size() - failures) << "/" << rows.size() << " checks passed\n";
    return failures == 0 ? 0 : 1;
}

} // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"coupled-oscillator network simulation and stability toolkit"};
    app.require_subcommand(1);

    std::string star_arg, edges_file, scale_free_arg, out_flag;
    std::uint64_t seed = 0;
    auto* topo = app.add_subcommand("topo", "build a graph and report its Laplacian spectrum");
    topo->add_option("--star", star_arg, "star with N peripheral nodes");
    topo->add_option("--edges", edges_file, "graph JSON file {\"n\":...,\"edges\":[[i,j],...]}");
    topo->add_option("--scale-free", scale_free_arg, "preferential-attachment graph, N,M");
    topo->add_option("--seed", seed, "seed for --scale-free");
    topo->add_option("--out", out_flag, "output directory");

    std::string sim_config, sim_out;
    auto* simulate = app.add_subcommand("simulate", "integrate a model and classify sync");
    simulate->add_option("--config", sim_config, "run config JSON")->required();
    simulate->add_option("--out", sim_out, "output directory");

    std::string flo_config, flo_out;
    auto* floquet =
        app.add_subcommand("floquet", "multipliers of a settled limit cycle");
    floquet->add_option("--config", flo_config, "run config JSON")->required();
    floquet->add_option("--out", flo_out, "output directory");

    std::string msf_config, msf_graph, msf_out;
    double gamma_min = 0.0, gamma_max = 0.0, phi = 0.0;
    int steps = 0;
    auto* msf = app.add_subcommand("msf", "master stability function sweep");
    msf->add_option("--config", msf_config, "run config JSON (fhn_single)")->required();
    msf->add_option("--gamma-min", gamma_min, "sweep start")->required();
    msf->add_option("--gamma-max", gamma_max, "sweep end")->required();
    msf->add_option("--steps", steps, "grid points")->required();
    msf->add_option("--graph", msf_graph, "graph JSON for a network verdict");
    auto* phi_opt = msf->add_option("--phi", phi, "coupling strength for the network verdict");
    msf->add_option("--out", msf_out, "output directory");

    std::string ger_matrix, ger_axis = "row", ger_out;
    auto* gershgorin = app.add_subcommand("gershgorin", "disc bounds for a matrix spectrum");
    gershgorin->add_option("--matrix", ger_matrix, "headerless CSV matrix")->required();
    gershgorin->add_option("--axis", ger_axis, "row or column")
        ->check(CLI::IsMember({"row", "column"}));
    gershgorin->add_option("--out", ger_out, "output directory");

    std::string wien_config, wien_out;
    auto* wien = app.add_subcommand("wien", "bridge oscillator frequency and amplitude");
    wien->add_option("--config", wien_config, "run config JSON (wien_bridge)")->required();
    wien->add_option("--out", wien_out, "output directory");

    std::string rep_out;
    auto* reproduce =
        app.add_subcommand("reproduce-paper", "run the five canned studies and check thresholds");
    reproduce->add_option("--out", rep_out, "output directory");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (topo->parsed()) return cmd_topo(star_arg, edges_file, scale_free_arg, seed, out_flag, out);
        if (simulate->parsed()) return cmd_simulate(sim_config, sim_out, out);
        if (floquet->parsed()) return cmd_floquet(flo_config, flo_out, out);
        if (msf->parsed())
            return cmd_msf(msf_config, gamma_min, gamma_max, steps, msf_graph, phi,
                           phi_opt->count() > 0, msf_out, out);
        if (gershgorin->parsed()) return cmd_gershgorin(ger_matrix, ger_axis, ger_out, out);
        if (wien->parsed()) return cmd_wien(wien_config, wien_out, out);
        if (reproduce->parsed()) return cmd_reproduce(rep_out, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidArgument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const BlowUpError& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoPeriodError& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace netsync::cli

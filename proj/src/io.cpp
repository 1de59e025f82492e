#include "netsync/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "netsync/errors.hpp"

namespace netsync::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    for (std::size_t j = 0; j < traj.dim(); ++j) out += ",x" + std::to_string(j);
    out += '\n';
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        out += format_double(traj.times[k]);
        for (std::size_t j = 0; j < traj.dim(); ++j) {
            out += ',';
            out += format_double(traj.states(k, j));
        }
        out += '\n';
    }
    return out;
}

std::string matrix_csv(const Matrix& m) {
    std::string out;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string msf_csv(const MsfCurve& curve) {
    std::string out = "gamma,max_modulus,msf,diverged\n";
    for (const auto& p : curve.points) {
        out += format_double(p.gamma);
        out += ',';
        out += p.diverged ? "inf" : format_double(p.max_modulus);
        out += ',';
        out += p.diverged ? "inf" : format_double(p.msf);
        out += ',';
        out += p.diverged ? "1" : "0";
        out += '\n';
    }
    return out;
}

std::string series_csv(const Vec& times, const Vec& values) {
    if (times.size() != values.size())
        throw InvalidArgument("series_csv: time and value lengths differ");
    std::string out = "t,value\n";
    for (std::size_t k = 0; k < times.size(); ++k) {
        out += format_double(times[k]);
        out += ',';
        out += format_double(values[k]);
        out += '\n';
    }
    return out;
}

std::string phase_diffs_csv(const Trajectory& traj,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Matrix& diffs) {
    if (diffs.rows() != traj.samples() || diffs.cols() != pairs.size())
        throw InvalidArgument("phase_diffs_csv: shape mismatch");
    std::string out = "t";
    for (const auto& [i, j] : pairs)
        out += ",d" + std::to_string(i) + "_" + std::to_string(j);
    out += '\n';
    for (std::size_t k = 0; k < traj.samples(); ++k) {
        out += format_double(traj.times[k]);
        for (std::size_t c = 0; c < pairs.size(); ++c) {
            out += ',';
            out += format_double(diffs(k, c));
        }
        out += '\n';
    }
    return out;
}

Matrix matrix_from_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            std::size_t comma = line.find(',', pos);
            const std::string field =
                line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
            try {
                std::size_t used = 0;
                row.push_back(std::stod(field, &used));
                while (used < field.size() && std::isspace(static_cast<unsigned char>(field[used])))
                    ++used;
                if (used != field.size()) throw std::invalid_argument(field);
            } catch (const std::exception&) {
                throw InvalidArgument("matrix_from_csv: non-numeric field '" + field + "'");
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw InvalidArgument("matrix_from_csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidArgument("matrix_from_csv: empty input");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    return m;
}

json graph_json(const Graph& g) {
    json edges = json::array();
    for (const auto& [i, j] : g.edges) edges.push_back(json::array({i, j}));
    json out{{"n", g.n_nodes}, {"edges", edges}};
    if (!g.labels.empty()) out["labels"] = g.labels;
    return out;
}

Graph graph_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
        throw InvalidArgument("graph_from_json: expected {\"n\": int, \"edges\": [[i,j],...]}");
    for (const auto& [key, _] : j.items())
        if (key != "n" && key != "edges" && key != "labels")
            throw InvalidArgument("graph_from_json: unknown key '" + key + "'");
    if (!j["n"].is_number_integer())
        throw InvalidArgument("graph_from_json: \"n\" must be an integer");
    std::vector<std::pair<int, int>> edges;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw InvalidArgument("graph_from_json: each edge must be a pair of node indices");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return build_from_edges(j["n"].get<int>(), std::move(edges), std::move(labels));
}

json spectrum_json(const SpectralDecomposition& s) {
    json vectors = json::array();
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        json col = json::array();
        for (std::size_t i = 0; i < s.eigenvectors.rows(); ++i)
            col.push_back(s.eigenvectors(i, k));
        vectors.push_back(col);
    }
    return {{"eigenvalues", s.eigenvalues}, {"eigenvectors", vectors}};
}

json floquet_json(const FloquetResult& r, const MonodromyMatrix& m) {
    json mults = json::array();
    for (const auto& mu : r.multipliers) mults.push_back(json::array({mu.real(), mu.imag()}));
    const double det = lu_determinant(m.matrix);
    const double expected = std::exp(m.trace_integral);
    return {{"multipliers", mults},
            {"trivial_index", r.trivial_index},
            {"max_nontrivial_modulus", r.max_nontrivial_modulus},
            {"stable", r.stable},
            {"trivial_tolerance", r.trivial_tolerance},
            {"period", m.period},
            {"anchor", m.anchor},
            {"liouville", {{"determinant", det},
                           {"exp_trace_integral", expected},
                           {"rel_error", std::abs(det - expected) / std::abs(expected)}}}};
}

json discs_json(const std::vector<GershgorinDisc>& discs, GershgorinAxis axis) {
    json arr = json::array();
    for (const auto& d : discs)
        arr.push_back({{"center", json::array({d.center.real(), d.center.imag()})},
                       {"radius", d.radius}});
    return {{"axis", axis == GershgorinAxis::Row ? "row" : "column"},
            {"discs", arr},
            {"bounds_left_half_plane", discs_bound_left_half_plane(discs)}};
}

std::string sync_class_name(SyncClass c) {
    switch (c) {
        case SyncClass::Unsynchronized: return "unsynchronized";
        case SyncClass::RemoteSync: return "remote_sync";
        case SyncClass::CompleteSync: return "complete_sync";
    }
    return "unknown";
}

std::string network_verdict_name(NetworkVerdict v) {
    switch (v) {
        case NetworkVerdict::Stable: return "stable";
        case NetworkVerdict::Marginal: return "marginal";
        case NetworkVerdict::Unstable: return "unstable";
    }
    return "unknown";
}

json sync_verdict_json(const SyncVerdict& v) {
    json out{{"classification", sync_class_name(v.classification)},
             {"peripheral_residual", v.peripheral_residual},
             {"hub_residual", v.hub_residual},
             {"tolerance", v.tolerance}};
    if (v.convergence_time)
        out["convergence_time"] = *v.convergence_time;
    else
        out["convergence_time"] = nullptr;
    return out;
}

json equilibrium_json(const EquilibriumResult& r) {
    json evs = json::array();
    for (const auto& ev : r.jacobian_eigenvalues)
        evs.push_back(json::array({ev.real(), ev.imag()}));
    return {{"x_star", r.x_star},
            {"x_star_mod_2pi", r.x_star_mod_2pi},
            {"residual", r.residual},
            {"jacobian_eigenvalues", evs},
            {"locally_stable", r.locally_stable},
            {"iterations", r.iterations}};
}

json network_report_json(const NetworkMsfReport& r) {
    json modes = json::array();
    for (const auto& m : r.modes) {
        json mode{{"eigenvalue", m.eigenvalue},
                  {"gamma", m.gamma},
                  {"diverged", m.diverged},
                  {"stable", m.stable},
                  {"marginal", m.marginal}};
        mode["msf"] = std::isfinite(m.msf) ? json(m.msf) : json("inf");
        mode["max_modulus"] = std::isfinite(m.max_modulus) ? json(m.max_modulus) : json("inf");
        modes.push_back(mode);
    }
    return {{"phi", r.phi},
            {"modes", modes},
            {"verdict", network_verdict_name(r.verdict)},
            {"stable", r.stable}};
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidArgument("cannot open file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path.string());
    out << content;
    if (!out) throw Error("short write: " + path.string());
}

} // namespace netsync::io

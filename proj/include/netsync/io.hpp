#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "netsync/analysis.hpp"
#include "netsync/floquet.hpp"
#include "netsync/graph.hpp"
#include "netsync/integrate.hpp"
#include "netsync/linalg.hpp"

namespace netsync::io {

using nlohmann::json;

/// 17 significant digits -- enough to round-trip a double exactly.
std::string format_double(double x);

// CSV emission. All CSVs: '.' decimal separator, ',' delimiter, LF endings.
// Matrices are the one headerless format (plain rows of numbers).
std::string trajectory_csv(const Trajectory& traj);
std::string matrix_csv(const Matrix& m);
std::string msf_csv(const MsfCurve& curve);
std::string series_csv(const Vec& times, const Vec& values); // header "t,value"
std::string phase_diffs_csv(const Trajectory& traj,
                            const std::vector<std::pair<int, int>>& pairs,
                            const Matrix& diffs);

/// Parse a headerless numeric CSV into a matrix. Throws InvalidArgument on
/// ragged rows or non-numeric fields.
Matrix matrix_from_csv(const std::string& text);

json graph_json(const Graph& g);
Graph graph_from_json(const json& j);

json spectrum_json(const SpectralDecomposition& s);
json floquet_json(const FloquetResult& r, const MonodromyMatrix& m);
json discs_json(const std::vector<GershgorinDisc>& discs, GershgorinAxis axis);
json sync_verdict_json(const SyncVerdict& v);
json equilibrium_json(const EquilibriumResult& r);
json network_report_json(const NetworkMsfReport& r);

std::string sync_class_name(SyncClass c);
std::string network_verdict_name(NetworkVerdict v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

} // namespace netsync::io

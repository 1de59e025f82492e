#include "netsync/config.hpp"

#include <random>

#include "netsync/errors.hpp"
#include "netsync/io.hpp"
#include "netsync/rng.hpp"

namespace netsync {

namespace {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed)
            if (key == a) ok = true;
        if (!ok) throw ConfigError("config: unknown key '" + key + "' in " + where);
    }
}

const json& require_key(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key))
        throw ConfigError("config: missing required key '" + std::string(key) + "' in " + where);
    return obj[key];
}

double as_number(const json& v, const std::string& where) {
    if (!v.is_number()) throw ConfigError("config: " + where + " must be a number");
    return v.get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    if (!obj.contains(key)) return fallback;
    return as_number(obj[key], where + "." + key);
}

int as_int(const json& v, const std::string& where) {
    if (!v.is_number_integer()) throw ConfigError("config: " + where + " must be an integer");
    return v.get<int>();
}

Vec as_vector(const json& v, const std::string& where) {
    if (!v.is_array()) throw ConfigError("config: " + where + " must be an array of numbers");
    Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(as_number(x, where + " entry"));
    return out;
}

ModelKind parse_model(const std::string& name) {
    if (name == "kuramoto_star") return ModelKind::KuramotoStar;
    if (name == "kuramoto_reduced") return ModelKind::KuramotoReduced;
    if (name == "fhn_single") return ModelKind::FhnSingle;
    if (name == "fhn_star") return ModelKind::FhnStar;
    if (name == "fhn_network") return ModelKind::FhnNetwork;
    if (name == "wien_bridge") return ModelKind::WienBridge;
    throw ConfigError("config: unknown model '" + name + "'");
}

const char* model_name(ModelKind m) {
    switch (m) {
        case ModelKind::KuramotoStar: return "kuramoto_star";
        case ModelKind::KuramotoReduced: return "kuramoto_reduced";
        case ModelKind::FhnSingle: return "fhn_single";
        case ModelKind::FhnStar: return "fhn_star";
        case ModelKind::FhnNetwork: return "fhn_network";
        case ModelKind::WienBridge: return "wien_bridge";
    }
    return "?";
}

KuramotoStarParams parse_kuramoto(const json& p) {
    check_keys(p, {"omega_hub", "omega_peripheral", "incoming", "outgoing"}, "params");
    KuramotoStarParams k;
    k.omega_hub = number_or(p, "omega_hub", 1.0, "params");
    k.omega_peripheral = number_or(p, "omega_peripheral", 1.0, "params");
    k.incoming = as_vector(require_key(p, "incoming", "params"), "params.incoming");
    k.outgoing = as_vector(require_key(p, "outgoing", "params"), "params.outgoing");
    return k;
}

FhnParams parse_fhn(const json& p) {
    check_keys(p, {"a", "b", "c", "d", "drive"}, "params");
    FhnParams f;
    f.a = number_or(p, "a", f.a, "params");
    f.b = number_or(p, "b", f.b, "params");
    f.c = number_or(p, "c", f.c, "params");
    f.d = number_or(p, "d", f.d, "params");
    f.drive = number_or(p, "drive", f.drive, "params");
    return f;
}

WienParams parse_wien(const json& p) {
    const bool device_mode = p.contains("resistance") || p.contains("capacitance") ||
                             p.contains("saturation_current") ||
                             p.contains("feedback_resistance") || p.contains("ideality") ||
                             p.contains("thermal_voltage");
    if (device_mode) {
        check_keys(p,
                   {"resistance", "capacitance", "saturation_current", "feedback_resistance",
                    "ideality", "thermal_voltage", "g0"},
                   "params (device form)");
        return WienParams::from_device(
            as_number(require_key(p, "resistance", "params"), "params.resistance"),
            as_number(require_key(p, "capacitance", "params"), "params.capacitance"),
            as_number(require_key(p, "saturation_current", "params"),
                      "params.saturation_current"),
            as_number(require_key(p, "feedback_resistance", "params"),
                      "params.feedback_resistance"),
            as_number(require_key(p, "ideality", "params"), "params.ideality"),
            as_number(require_key(p, "thermal_voltage", "params"), "params.thermal_voltage"),
            as_number(require_key(p, "g0", "params"), "params.g0"));
    }
    check_keys(p, {"omega0", "g0", "k_nl"}, "params");
    WienParams w;
    w.omega0 = number_or(p, "omega0", w.omega0, "params");
    w.g0 = number_or(p, "g0", w.g0, "params");
    w.k_nl = number_or(p, "k_nl", w.k_nl, "params");
    return w;
}

Graph parse_graph(const json& g, std::uint64_t default_seed) {
    if (!g.is_object()) throw ConfigError("config: graph must be an object");
    if (g.contains("star")) {
        check_keys(g, {"star"}, "graph");
        return build_star(as_int(g["star"], "graph.star"));
    }
    if (g.contains("scale_free")) {
        check_keys(g, {"scale_free"}, "graph");
        const json& sf = g["scale_free"];
        check_keys(sf, {"n", "m", "seed"}, "graph.scale_free");
        const std::uint64_t seed =
            sf.contains("seed")
                ? sf["seed"].get<std::uint64_t>()
                : default_seed;
        return build_scale_free(as_int(require_key(sf, "n", "graph.scale_free"), "graph.n"),
                                as_int(require_key(sf, "m", "graph.scale_free"), "graph.m"),
                                seed);
    }
    return io::graph_from_json(g);
}

Vec resolve_initial_state(const json& doc, int dim, std::uint64_t default_seed) {
    if (!doc.contains("initial_state")) return Vec(dim, 0.0);
    const json& init = doc["initial_state"];
    if (init.is_array()) {
        Vec x = as_vector(init, "initial_state");
        if (static_cast<int>(x.size()) != dim)
            throw ConfigError("config: initial_state has length " + std::to_string(x.size()) +
                              " but the model needs " + std::to_string(dim));
        return x;
    }
    if (!init.is_object())
        throw ConfigError("config: initial_state must be an array or a jitter object");
    check_keys(init, {"seed", "base", "jitter"}, "initial_state");
    const double jitter =
        as_number(require_key(init, "jitter", "initial_state"), "initial_state.jitter");
    if (jitter < 0.0) throw ConfigError("config: initial_state.jitter must be nonnegative");
    Vec base(dim, 0.0);
    if (init.contains("base")) {
        base = as_vector(init["base"], "initial_state.base");
        if (static_cast<int>(base.size()) != dim)
            throw ConfigError("config: initial_state.base length does not match the model");
    }
    const std::uint64_t seed =
        init.contains("seed") ? init["seed"].get<std::uint64_t>() : default_seed;
    std::mt19937_64 rng(seed);
    for (double& x : base) x += uniform_in(rng, -jitter, jitter);
    return base;
}

} // namespace

RunConfig parse_run_config(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config: top level must be a JSON object");
    check_keys(doc,
               {"model", "params", "graph", "coupling", "star_coupling", "integrator",
                "analysis", "initial_state", "seed", "output_dir"},
               "top level");

    RunConfig rc;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer() ||
            (doc["seed"].is_number_integer() && doc["seed"].get<std::int64_t>() < 0))
            throw ConfigError("config: seed must be a nonnegative integer");
        rc.seed = doc["seed"].get<std::uint64_t>();
    }

    const json& model_v = require_key(doc, "model", "top level");
    if (!model_v.is_string()) throw ConfigError("config: model must be a string");
    rc.spec.model = parse_model(model_v.get<std::string>());

    const json params = doc.contains("params") ? doc["params"] : json::object();
    if (!params.is_object()) throw ConfigError("config: params must be an object");

    try {
        switch (rc.spec.model) {
            case ModelKind::KuramotoStar:
            case ModelKind::KuramotoReduced:
                rc.spec.kuramoto = parse_kuramoto(params);
                break;
            case ModelKind::FhnSingle:
            case ModelKind::FhnStar:
            case ModelKind::FhnNetwork:
                rc.spec.fhn = parse_fhn(params);
                break;
            case ModelKind::WienBridge:
                rc.spec.wien = parse_wien(params);
                break;
        }

        if (rc.spec.model == ModelKind::FhnStar) {
            const json& sc = require_key(doc, "star_coupling", "top level (fhn_star)");
            check_keys(sc, {"incoming", "outgoing"}, "star_coupling");
            const Vec in = as_vector(require_key(sc, "incoming", "star_coupling"),
                                     "star_coupling.incoming");
            const Vec out = as_vector(require_key(sc, "outgoing", "star_coupling"),
                                      "star_coupling.outgoing");
            if (in.size() != 2 || out.size() != 2)
                throw ConfigError("config: star_coupling lists must have length 2");
            rc.spec.star.incoming = {in[0], in[1]};
            rc.spec.star.outgoing = {out[0], out[1]};
        } else if (doc.contains("star_coupling")) {
            throw ConfigError("config: star_coupling only applies to fhn_star");
        }

        if (rc.spec.model == ModelKind::FhnNetwork) {
            rc.spec.graph = parse_graph(require_key(doc, "graph", "top level (fhn_network)"),
                                        rc.seed);
            rc.spec.coupling =
                as_number(require_key(doc, "coupling", "top level (fhn_network)"), "coupling");
        } else {
            if (doc.contains("graph"))
                throw ConfigError("config: graph only applies to fhn_network");
            if (doc.contains("coupling"))
                throw ConfigError("config: coupling only applies to fhn_network");
        }

        const json integ = doc.contains("integrator") ? doc["integrator"] : json::object();
        check_keys(integ, {"dt", "t_end", "transient", "blow_up_threshold"}, "integrator");
        rc.integrator.dt = number_or(integ, "dt", rc.integrator.dt, "integrator");
        rc.integrator.t_end = number_or(integ, "t_end", rc.integrator.t_end, "integrator");
        rc.integrator.transient =
            number_or(integ, "transient", rc.integrator.transient, "integrator");
        rc.integrator.blow_up_threshold = number_or(integ, "blow_up_threshold",
                                                    rc.integrator.blow_up_threshold, "integrator");
        rc.integrator.validate();

        const json analysis = doc.contains("analysis") ? doc["analysis"] : json::object();
        check_keys(analysis, {"hub", "sync_tolerance"}, "analysis");
        if (analysis.contains("hub")) rc.analysis.hub = as_int(analysis["hub"], "analysis.hub");
        rc.analysis.sync_tolerance =
            number_or(analysis, "sync_tolerance", rc.analysis.sync_tolerance, "analysis");
        if (!(rc.analysis.sync_tolerance > 0.0))
            throw ConfigError("config: analysis.sync_tolerance must be positive");

        rc.spec.validate();
        rc.initial_state = resolve_initial_state(doc, rc.spec.state_dim(), rc.seed);

        if (doc.contains("output_dir")) {
            if (!doc["output_dir"].is_string())
                throw ConfigError("config: output_dir must be a string");
            rc.output_dir = doc["output_dir"].get<std::string>();
        }
    } catch (const InvalidArgument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    // canonical resolved form: defaults filled in, jitter already drawn
    json resolved;
    resolved["model"] = model_name(rc.spec.model);
    switch (rc.spec.model) {
        case ModelKind::KuramotoStar:
        case ModelKind::KuramotoReduced:
            resolved["params"] = {{"omega_hub", rc.spec.kuramoto.omega_hub},
                                  {"omega_peripheral", rc.spec.kuramoto.omega_peripheral},
                                  {"incoming", rc.spec.kuramoto.incoming},
                                  {"outgoing", rc.spec.kuramoto.outgoing}};
            break;
        case ModelKind::FhnSingle:
        case ModelKind::FhnStar:
        case ModelKind::FhnNetwork:
            resolved["params"] = {{"a", rc.spec.fhn.a},
                                  {"b", rc.spec.fhn.b},
                                  {"c", rc.spec.fhn.c},
                                  {"d", rc.spec.fhn.d},
                                  {"drive", rc.spec.fhn.drive}};
            break;
        case ModelKind::WienBridge:
            resolved["params"] = {{"omega0", rc.spec.wien.omega0},
                                  {"g0", rc.spec.wien.g0},
                                  {"k_nl", rc.spec.wien.k_nl}};
            break;
    }
    if (rc.spec.model == ModelKind::FhnStar)
        resolved["star_coupling"] = {
            {"incoming", {rc.spec.star.incoming[0], rc.spec.star.incoming[1]}},
            {"outgoing", {rc.spec.star.outgoing[0], rc.spec.star.outgoing[1]}}};
    if (rc.spec.model == ModelKind::FhnNetwork) {
        resolved["graph"] = io::graph_json(rc.spec.graph);
        resolved["coupling"] = rc.spec.coupling;
    }
    resolved["integrator"] = {{"dt", rc.integrator.dt},
                              {"t_end", rc.integrator.t_end},
                              {"transient", rc.integrator.transient},
                              {"blow_up_threshold", rc.integrator.blow_up_threshold}};
    resolved["analysis"] = {{"hub", rc.analysis.hub},
                            {"sync_tolerance", rc.analysis.sync_tolerance}};
    resolved["initial_state"] = rc.initial_state;
    resolved["seed"] = rc.seed;
    if (!rc.output_dir.empty()) resolved["output_dir"] = rc.output_dir;
    rc.resolved = std::move(resolved);
    return rc;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(io::read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config: " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_run_config(doc);
}

} // namespace netsync

#include <doctest.h>

#include <filesystem>
#include <string>

#include "netsync/config.hpp"
#include "netsync/errors.hpp"
#include "netsync/io.hpp"

using namespace netsync;
using nlohmann::json;

namespace {

json minimal_kuramoto() {
    return json{{"model", "kuramoto_star"},
                {"params", {{"incoming", {1.0, 1.0}}, {"outgoing", {1.0, 1.0}}}}};
}

} // namespace

TEST_CASE("minimal config per model parses with defaults filled in") {
    const RunConfig k = parse_run_config(minimal_kuramoto());
    CHECK(k.spec.model == ModelKind::KuramotoStar);
    CHECK(k.spec.kuramoto.omega_hub == 1.0);
    CHECK(k.integrator.dt == 1e-3);
    CHECK(k.integrator.t_end == 400.0);
    CHECK(k.integrator.transient == 200.0);
    CHECK(k.integrator.blow_up_threshold == 1e6);
    CHECK(k.analysis.hub == 0);
    CHECK(k.analysis.sync_tolerance == 1e-2);
    CHECK(k.seed == 0);
    REQUIRE(k.initial_state.size() == 3); // hub + 2 peripherals, zeros by default
    for (double x : k.initial_state) CHECK(x == 0.0);

    const RunConfig f = parse_run_config(json{{"model", "fhn_single"}});
    CHECK(f.spec.model == ModelKind::FhnSingle);
    CHECK(f.spec.fhn.a == 3.0);
    CHECK(f.spec.fhn.d == 0.2799991);
    CHECK(f.initial_state.size() == 2);

    const RunConfig w = parse_run_config(json{{"model", "wien_bridge"}});
    CHECK(w.spec.model == ModelKind::WienBridge);
    CHECK(w.initial_state.size() == 2);
}

TEST_CASE("fhn_star demands star_coupling; other models reject it") {
    json doc{{"model", "fhn_star"}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
    doc["star_coupling"] = {{"incoming", {0.115, 0.115}}, {"outgoing", {0.115, 0.115}}};
    const RunConfig rc = parse_run_config(doc);
    CHECK(rc.spec.star.incoming[1] == 0.115);
    CHECK(rc.initial_state.size() == 6);

    doc["star_coupling"] = {{"incoming", {0.1}}, {"outgoing", {0.1}}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    json other = minimal_kuramoto();
    other["star_coupling"] = {{"incoming", {0.1, 0.1}}, {"outgoing", {0.1, 0.1}}};
    CHECK_THROWS_AS(parse_run_config(other), ConfigError);
}

TEST_CASE("fhn_network demands graph and coupling; other models reject them") {
    json doc{{"model", "fhn_network"}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
    doc["graph"] = {{"star", 4}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError); // still no coupling
    doc["coupling"] = 0.115;
    const RunConfig rc = parse_run_config(doc);
    CHECK(rc.spec.graph.n_nodes == 5);
    CHECK(rc.spec.coupling == 0.115);
    CHECK(rc.initial_state.size() == 10);

    json other{{"model", "fhn_single"}, {"coupling", 0.1}};
    CHECK_THROWS_AS(parse_run_config(other), ConfigError);
    json other2{{"model", "fhn_single"}, {"graph", {{"star", 3}}}};
    CHECK_THROWS_AS(parse_run_config(other2), ConfigError);
}

TEST_CASE("graph accepts star, scale_free, and inline edge-list forms") {
    json doc{{"model", "fhn_network"}, {"coupling", 0.1}};

    doc["graph"] = {{"star", 3}};
    CHECK(parse_run_config(doc).spec.graph.edges.size() == 3);

    doc["graph"] = {{"scale_free", {{"n", 12}, {"m", 2}, {"seed", 7}}}};
    const Graph sf = parse_run_config(doc).spec.graph;
    CHECK(sf.n_nodes == 12);
    const Graph sf2 = parse_run_config(doc).spec.graph;
    CHECK(sf.edges == sf2.edges); // seeded, so identical across parses

    doc["graph"] = {{"n", 3}, {"edges", {{0, 1}, {1, 2}}}};
    CHECK(parse_run_config(doc).spec.graph.edges.size() == 2);

    doc["graph"] = {{"star", 3}, {"scale_free", {{"n", 5}, {"m", 1}}}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("unknown keys are rejected at every nesting level") {
    json doc = minimal_kuramoto();
    doc["typo"] = 1;
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["params"]["omega"] = 2.0; // should be omega_hub / omega_peripheral
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["integrator"] = {{"dt", 0.01}, {"step", 5}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["analysis"] = {{"hub", 0}, {"window", 2}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["initial_state"] = {{"jitter", 0.1}, {"spread", 1}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    json net{{"model", "fhn_network"},
             {"coupling", 0.1},
             {"graph", {{"scale_free", {{"n", 5}, {"m", 1}, {"rewire", 0.1}}}}}};
    CHECK_THROWS_AS(parse_run_config(net), ConfigError);
}

TEST_CASE("error messages name the offending key") {
    json doc = minimal_kuramoto();
    doc["typo"] = 1;
    try {
        parse_run_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("typo") != std::string::npos);
    }
}

TEST_CASE("initial_state: explicit array must match the state dimension") {
    json doc = minimal_kuramoto();
    doc["initial_state"] = {0.1, 0.2, 0.3};
    const RunConfig rc = parse_run_config(doc);
    CHECK(rc.initial_state[2] == 0.3);

    doc["initial_state"] = {0.1, 0.2};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("initial_state: jitter draws are seeded and reproducible") {
    json doc = minimal_kuramoto();
    doc["initial_state"] = {{"seed", 11}, {"jitter", 0.5}};
    const Vec a = parse_run_config(doc).initial_state;
    const Vec b = parse_run_config(doc).initial_state;
    CHECK(a == b);
    for (double x : a) {
        CHECK(x >= -0.5);
        CHECK(x <= 0.5);
    }
    bool any_nonzero = false;
    for (double x : a) any_nonzero |= (x != 0.0);
    CHECK(any_nonzero);

    doc["initial_state"] = {{"seed", 12}, {"jitter", 0.5}};
    CHECK(parse_run_config(doc).initial_state != a);

    // jitter seed falls back to the top-level seed
    doc["initial_state"] = {{"jitter", 0.5}};
    doc["seed"] = 11;
    CHECK(parse_run_config(doc).initial_state == a);

    doc["initial_state"] = {{"base", {1.0, 1.0, 1.0}}, {"jitter", 0.0}};
    const Vec c = parse_run_config(doc).initial_state;
    for (double x : c) CHECK(x == 1.0);

    doc["initial_state"] = {{"jitter", -0.1}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);
}

TEST_CASE("wien device form derives the reduced parameters") {
    json doc{{"model", "wien_bridge"},
             {"params",
              {{"resistance", 10e3},
               {"capacitance", 100e-9},
               {"saturation_current", 1.0},
               {"feedback_resistance", 9.0 / 8.0},
               {"ideality", 1.0},
               {"thermal_voltage", 1.0},
               {"g0", 3.2}}}};
    const RunConfig rc = parse_run_config(doc);
    CHECK(rc.spec.wien.omega0 == doctest::Approx(1000.0));
    CHECK(rc.spec.wien.g0 == 3.2);
    CHECK(rc.spec.wien.k_nl == doctest::Approx(1.0));

    doc["params"].erase("thermal_voltage"); // partial device form is an error
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    json mixed{{"model", "wien_bridge"},
               {"params", {{"resistance", 1.0}, {"omega0", 5.0}}}};
    CHECK_THROWS_AS(parse_run_config(mixed), ConfigError);
}

TEST_CASE("out-of-range values surface as ConfigError, not raw exceptions") {
    json doc = minimal_kuramoto();
    doc["integrator"] = {{"dt", 0.0}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["integrator"] = {{"dt", 0.1}, {"t_end", 10.0}, {"transient", 12.0}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["analysis"] = {{"sync_tolerance", 0.0}};
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["seed"] = -3;
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    doc = minimal_kuramoto();
    doc["seed"] = 1.5;
    CHECK_THROWS_AS(parse_run_config(doc), ConfigError);

    // model-level validation (mismatched coupling lists) is wrapped the same way
    json bad{{"model", "kuramoto_star"},
             {"params", {{"incoming", {1.0, 1.0}}, {"outgoing", {1.0}}}}};
    CHECK_THROWS_AS(parse_run_config(bad), ConfigError);

    CHECK_THROWS_AS(parse_run_config(json{{"model", "van_der_pol"}}), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json::array()), ConfigError);
    CHECK_THROWS_AS(parse_run_config(json{{"params", json::object()}}), ConfigError);
}

TEST_CASE("resolved config echoes defaults and the drawn initial state") {
    json doc = minimal_kuramoto();
    doc["initial_state"] = {{"seed", 3}, {"jitter", 0.25}};
    const RunConfig rc = parse_run_config(doc);
    CHECK(rc.resolved["model"] == "kuramoto_star");
    CHECK(rc.resolved["integrator"]["t_end"] == 400.0);
    CHECK(rc.resolved["integrator"]["blow_up_threshold"] == 1e6);
    CHECK(rc.resolved["analysis"]["sync_tolerance"] == 1e-2);
    CHECK(rc.resolved["params"]["omega_hub"] == 1.0);
    REQUIRE(rc.resolved["initial_state"].size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(rc.resolved["initial_state"][i].get<double>() == rc.initial_state[i]);
    // reparsing the resolved form reproduces the run exactly
    const RunConfig again = parse_run_config(rc.resolved);
    CHECK(again.initial_state == rc.initial_state);
    CHECK(again.resolved == rc.resolved);
}

TEST_CASE("load_run_config wraps file and syntax problems in ConfigError") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "netsync_cfg_test";
    fs::create_directories(dir);
    io::write_file(dir / "bad.json", "{\"model\": ");
    CHECK_THROWS_AS(load_run_config(dir / "bad.json"), ConfigError);

    io::write_file(dir / "ok.json", minimal_kuramoto().dump());
    CHECK(load_run_config(dir / "ok.json").spec.model == ModelKind::KuramotoStar);
    fs::remove_all(dir);
}

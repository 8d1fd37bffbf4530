#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "sleeproute/error.hpp"
#include "sleeproute/scenario.hpp"

using namespace sleeproute;
using nlohmann::json;

namespace {

json minimal() {
    return json::parse(R"({
        "nodes": 3,
        "links": [[0, 1, 0.9], [1, 2]],
        "constellations": {"groups": [[0], [1, 2]]}
    })");
}

std::vector<Violation> violations_of(const json& doc, bool strict = false) {
    try {
        validate_scenario(doc, strict);
    } catch (const ValidationError& e) {
        return e.violations();
    }
    return {};
}

bool has_path(const std::vector<Violation>& v, const std::string& path) {
    for (const auto& x : v)
        if (x.path == path) return true;
    return false;
}

}  // namespace

TEST_CASE("bundled scenario") {
    auto s = load_scenario(SLEEPROUTE_DATA_DIR "/paper9.scn", true);
    CHECK(s.network.node_count() == 10);
    CHECK(s.constellations.group_count() == 4);
    CHECK(s.constellations.group(1) == std::vector<NodeId>{1, 2, 8});
    CHECK(s.initial_energy[1] == Energy::from_joules(100));
    CHECK(s.initial_energy[0] == Energy{});
}

TEST_CASE("defaults fill in") {
    auto s = validate_scenario(minimal());
    CHECK(s.network.link(1).delivery_probability == 1.0);
    CHECK(s.energy_model.e_tx_uj == 450);
    CHECK(s.period.samples_per_period == 20);
    CHECK(s.lms_k == 2);
    CHECK(s.count_sink_rx);
}

TEST_CASE("transitivity violation names the matrix entry") {
    auto doc = minimal();
    doc["nodes"] = 9;
    doc["links"] = json::array();
    for (int i = 1; i < 9; ++i) doc["links"].push_back({i - 1, i});
    std::vector<std::vector<int>> m(9, std::vector<int>(9, 0));
    for (int i = 0; i < 9; ++i) m[i][i] = 1;
    m[1][2] = m[2][1] = m[2][8] = m[8][2] = 1;
    doc["constellations"] = json::object();
    doc["constellations"]["matrix"] = m;
    auto v = violations_of(doc);
    REQUIRE(v.size() == 1);
    CHECK(v[0].path == "/constellations/matrix/1/8");
}

TEST_CASE("negative initial energy names the node") {
    auto doc = minimal();
    doc["initial_energy_J"] = {{"2", -5}};
    auto v = violations_of(doc);
    CHECK(has_path(v, "/initial_energy_J/2"));
}

TEST_CASE("every violation is reported") {
    auto doc = minimal();
    doc["links"].push_back({2, 2});
    doc["energy"] = {{"e_tx_uJ", -1}};
    doc["period"] = {{"duty_cycle", 1.0}};
    doc["extra"] = true;
    auto loose = violations_of(doc);
    CHECK(loose.size() >= 3);
    CHECK(has_path(loose, "/energy/e_tx_uJ"));
    CHECK(has_path(loose, "/period/duty_cycle"));
    CHECK_FALSE(has_path(loose, "/extra"));
    CHECK(has_path(violations_of(doc, true), "/extra"));
}

TEST_CASE("file errors") {
    try {
        load_scenario("/nonexistent/x.scn");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::FileNotFound);
        CHECK(std::string(e.what()).find("/nonexistent/x.scn") != std::string::npos);
    }
    auto path = std::filesystem::temp_directory_path() / "sleeproute_bad.scn";
    std::ofstream(path) << "{ \"nodes\": 3, ";
    try {
        load_scenario(path);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Parse);
    }
    std::filesystem::remove(path);
}

TEST_CASE("generator determinism and shape") {
    auto a = generate_random(9, 3, 0.4, 7);
    auto b = generate_random(9, 3, 0.4, 7);
    CHECK(scenario_to_json(a) == scenario_to_json(b));
    CHECK(a.constellations.group_count() == 3);
    CHECK(a.constellations.group(0) == std::vector<NodeId>{0});
    for (auto l : a.network.links()) {
        CHECK(l.delivery_probability >= 0.5);
        CHECK(l.delivery_probability <= 1.0);
    }
    auto singles = generate_random(6, 6, 0.5, 1);
    for (auto g : singles.constellations.groups()) CHECK(g.size() == 1);
    CHECK_THROWS_AS(generate_random(5, 6, 0.5, 1), Error);
}

TEST_CASE("generated scenarios validate and round trip") {
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        const std::size_t n = 2 + seed % 14;
        const std::size_t m = 2 + seed % (n - 1);
        auto s = generate_random(n, m, 0.3, seed);
        auto doc = scenario_to_json(s);
        auto again = validate_scenario(doc, true);
        CHECK(scenario_to_json(again) == doc);
        CHECK(again.network.links().size() == s.network.links().size());
        CHECK(again.constellations == s.constellations);
    }
}

TEST_CASE("sparse generator gives up") {
    try {
        generate_random(12, 3, 0.01, 1, 5);
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CouldNotConnect);
    }
}

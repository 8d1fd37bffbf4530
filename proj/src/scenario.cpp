#include "sleeproute/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "random.hpp"

namespace sleeproute {

using nlohmann::json;

namespace {

bool is_count(const json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); }

std::string join_violations(const std::vector<Violation>& vs) {
    std::string out = std::to_string(vs.size()) + " violation(s)";
    for (const auto& v : vs) out += "\n  " + (v.path.empty() ? std::string("/") : v.path) + ": " + v.message;
    return out;
}

class Checker {
public:
    void fail(std::string path, std::string message) { found.push_back({std::move(path), std::move(message)}); }

    // Reads an optional positive number; leaves `out` untouched when absent.
    void number(const json& obj, const std::string& base, const char* key, double& out, bool positive = true) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        const std::string path = base + "/" + key;
        if (!v.is_number()) return fail(path, "must be a number");
        double d = v.get<double>();
        if (!std::isfinite(d)) return fail(path, "must be finite");
        if (positive && !(d > 0)) return fail(path, "must be positive");
        out = d;
    }

    void integer(const json& obj, const std::string& base, const char* key, long long& out, long long min) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        const std::string path = base + "/" + key;
        if (!v.is_number_integer()) return fail(path, "must be an integer");
        long long x = v.get<long long>();
        if (x < min) return fail(path, "must be at least " + std::to_string(min));
        out = x;
    }

    void boolean(const json& obj, const std::string& base, const char* key, bool& out) {
        if (!obj.contains(key)) return;
        const json& v = obj.at(key);
        if (!v.is_boolean()) return fail(base + "/" + key, "must be true or false");
        out = v.get<bool>();
    }

    void unknown_keys(const json& obj, const std::string& base, std::initializer_list<const char*> allowed) {
        if (!strict || !obj.is_object()) return;
        for (const auto& [key, _] : obj.items()) {
            if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
                fail(base + "/" + key, "unknown key");
        }
    }

    bool object_at(const json& doc, const char* key) {
        if (!doc.contains(key)) return false;
        if (!doc.at(key).is_object()) {
            fail(std::string("/") + key, "must be an object");
            return false;
        }
        return true;
    }

    bool strict = false;
    std::vector<Violation> found;
};

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(Errc::Validation, join_violations(violations)), violations_(std::move(violations)) {}

Scenario validate_scenario(const json& doc, bool strict) {
    Checker ck;
    ck.strict = strict;
    if (!doc.is_object()) throw ValidationError(std::vector<Violation>{{"", "scenario must be a JSON object"}});
    ck.unknown_keys(doc, "",
                    {"name", "nodes", "links", "constellations", "energy", "period", "initial_energy_J", "strategy",
                     "flags", "comment"});

    Scenario sc;
    if (doc.contains("name")) {
        if (doc.at("name").is_string())
            sc.name = doc.at("name").get<std::string>();
        else
            ck.fail("/name", "must be a string");
    }

    // nodes
    long long nodes = 0;
    if (!doc.contains("nodes"))
        ck.fail("/nodes", "required");
    else
        ck.integer(doc, "", "nodes", nodes, 2);
    const bool nodes_ok = nodes >= 2;

    // links
    std::vector<Link> links;
    bool links_ok = true;
    if (!doc.contains("links") || !doc.at("links").is_array()) {
        ck.fail("/links", "required array of links");
        links_ok = false;
    } else {
        const json& arr = doc.at("links");
        for (std::size_t i = 0; i < arr.size(); ++i) {
            const std::string path = "/links/" + std::to_string(i);
            const json& e = arr[i];
            json a, b, p = 1.0;
            if (e.is_array() && (e.size() == 2 || e.size() == 3)) {
                a = e[0];
                b = e[1];
                if (e.size() == 3) p = e[2];
            } else if (e.is_object() && e.contains("a") && e.contains("b")) {
                a = e.at("a");
                b = e.at("b");
                if (e.contains("p")) p = e.at("p");
                ck.unknown_keys(e, path, {"a", "b", "p"});
            } else {
                ck.fail(path, "expected [a, b], [a, b, p] or {\"a\", \"b\", \"p\"}");
                links_ok = false;
                continue;
            }
            if (!is_count(a) || !is_count(b)) {
                ck.fail(path, "endpoints must be non-negative integers");
                links_ok = false;
                continue;
            }
            if (!p.is_number() || !(p.get<double>() > 0.0 && p.get<double>() <= 1.0)) {
                ck.fail(path, "delivery probability must lie in (0, 1]");
                links_ok = false;
                continue;
            }
            NodeId ia = a.get<NodeId>(), ib = b.get<NodeId>();
            if (nodes_ok && (ia >= static_cast<NodeId>(nodes) || ib >= static_cast<NodeId>(nodes))) {
                ck.fail(path, "endpoint out of range for " + std::to_string(nodes) + " nodes");
                links_ok = false;
                continue;
            }
            links.push_back({ia, ib, p.get<double>()});
        }
    }
    if (nodes_ok && links_ok) {
        try {
            sc.network = Network::build(static_cast<std::size_t>(nodes), links);
        } catch (const Error& e) {
            ck.fail("/links", e.what());
        }
    }

    // constellations
    if (!doc.contains("constellations") || !doc.at("constellations").is_object()) {
        ck.fail("/constellations", "required object with \"groups\" or \"matrix\"");
    } else {
        const json& c = doc.at("constellations");
        ck.unknown_keys(c, "/constellations", {"groups", "matrix"});
        const bool has_groups = c.contains("groups"), has_matrix = c.contains("matrix");
        if (has_groups == has_matrix) {
            ck.fail("/constellations", "give exactly one of \"groups\" or \"matrix\"");
        } else if (has_matrix) {
            try {
                auto rows = c.at("matrix").get<std::vector<std::vector<int>>>();
                ConstellationMatrix m = ConstellationMatrix::from_rows(rows);
                if (nodes_ok && m.size() != static_cast<std::size_t>(nodes)) {
                    ck.fail("/constellations/matrix", "must be " + std::to_string(nodes) + "x" + std::to_string(nodes));
                } else if (auto bad = find_partition_violation(m)) {
                    ck.fail("/constellations/matrix/" + std::to_string(bad->row) + "/" + std::to_string(bad->col),
                            "NotAPartition: " + bad->reason);
                } else {
                    sc.constellations = ConstellationSet::from_matrix(m);
                }
            } catch (const json::exception&) {
                ck.fail("/constellations/matrix", "must be a square array of 0/1 rows");
            } catch (const Error& e) {
                ck.fail("/constellations/matrix", e.what());
            }
        } else if (nodes_ok) {
            try {
                auto groups = c.at("groups").get<std::vector<std::vector<NodeId>>>();
                sc.constellations = ConstellationSet::from_groups(static_cast<std::size_t>(nodes), std::move(groups));
            } catch (const json::exception&) {
                ck.fail("/constellations/groups", "must be an array of arrays of node ids");
            } catch (const Error& e) {
                ck.fail("/constellations/groups", e.what());
            }
        }
    }

    // energy model
    if (ck.object_at(doc, "energy")) {
        const json& e = doc.at("energy");
        ck.unknown_keys(e, "/energy",
                        {"e_tx_uJ", "e_rv_uJ", "e_sense_uJ", "p_active_mW", "p_sleep_mW", "initial_J", "message_bytes",
                         "tx_power_dBm"});
        EnergyModel& m = sc.energy_model;
        ck.number(e, "/energy", "e_tx_uJ", m.e_tx_uj);
        ck.number(e, "/energy", "e_rv_uJ", m.e_rv_uj);
        ck.number(e, "/energy", "e_sense_uJ", m.e_sense_uj);
        ck.number(e, "/energy", "p_active_mW", m.p_active_mw);
        ck.number(e, "/energy", "p_sleep_mW", m.p_sleep_mw);
        ck.number(e, "/energy", "initial_J", m.initial_energy_j);
        long long bytes = m.message_bytes;
        ck.integer(e, "/energy", "message_bytes", bytes, 1);
        m.message_bytes = static_cast<int>(bytes);
        ck.number(e, "/energy", "tx_power_dBm", m.tx_power_dbm, false);
        if (!(m.p_active_mw > m.p_sleep_mw)) ck.fail("/energy/p_active_mW", "must exceed p_sleep_mW");
    }

    if (ck.object_at(doc, "period")) {
        const json& p = doc.at("period");
        ck.unknown_keys(p, "/period", {"samples", "interval_s", "duty_cycle"});
        long long samples = sc.period.samples_per_period;
        ck.integer(p, "/period", "samples", samples, 1);
        sc.period.samples_per_period = static_cast<int>(samples);
        ck.number(p, "/period", "interval_s", sc.period.sample_interval_s);
        double duty = sc.period.duty_cycle;
        ck.number(p, "/period", "duty_cycle", duty, false);
        if (!(duty > 0 && duty < 1))
            ck.fail("/period/duty_cycle", "must lie strictly between 0 and 1");
        else
            sc.period.duty_cycle = duty;
    }

    // per-node initial energy: defaults from the model, overrides by node id
    if (nodes_ok) {
        sc.initial_energy.assign(static_cast<std::size_t>(nodes), Energy::from_joules(sc.energy_model.initial_energy_j));
        sc.initial_energy[kSink] = Energy{};
        if (ck.object_at(doc, "initial_energy_J")) {
            for (const auto& [key, value] : doc.at("initial_energy_J").items()) {
                const std::string path = "/initial_energy_J/" + key;
                NodeId id = 0;
                try {
                    std::size_t used = 0;
                    id = std::stoul(key, &used);
                    if (used != key.size()) throw std::invalid_argument(key);
                } catch (const std::exception&) {
                    ck.fail(path, "key must be a node id");
                    continue;
                }
                if (id == kSink || id >= static_cast<NodeId>(nodes)) {
                    ck.fail(path, "node " + key + " is not a sensing node");
                    continue;
                }
                if (!value.is_number() || !(value.get<double>() > 0) || !std::isfinite(value.get<double>())) {
                    ck.fail(path, "initial energy of node " + key + " must be positive");
                    continue;
                }
                sc.initial_energy[id] = Energy::from_joules(value.get<double>());
            }
        }
    }

    if (ck.object_at(doc, "strategy")) {
        const json& s = doc.at("strategy");
        ck.unknown_keys(s, "/strategy", {"lms_k", "seeds"});
        long long k = static_cast<long long>(sc.lms_k);
        ck.integer(s, "/strategy", "lms_k", k, 1);
        sc.lms_k = static_cast<std::size_t>(k);
        if (nodes_ok && sc.lms_k > static_cast<std::size_t>(nodes - 1))
            ck.fail("/strategy/lms_k", "cannot exceed the number of sensing nodes");
        if (s.contains("seeds")) {
            const json& seeds = s.at("seeds");
            if (!seeds.is_array() || seeds.empty() ||
                !std::all_of(seeds.begin(), seeds.end(), [](const json& x) { return is_count(x); }))
                ck.fail("/strategy/seeds", "must be a non-empty array of non-negative integers");
            else
                sc.seeds = seeds.get<std::vector<std::uint64_t>>();
        }
    }

    if (ck.object_at(doc, "flags")) {
        const json& f = doc.at("flags");
        ck.unknown_keys(f, "/flags", {"count_sink_rx", "sampled_losses"});
        ck.boolean(f, "/flags", "count_sink_rx", sc.count_sink_rx);
        ck.boolean(f, "/flags", "sampled_losses", sc.sampled_losses);
    }

    if (!ck.found.empty()) throw ValidationError(std::move(ck.found));
    return sc;
}

Scenario load_scenario(const std::filesystem::path& path, bool strict) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::FileNotFound, "cannot open scenario file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw Error(Errc::Parse, path.string() + ": " + e.what());
    }
    return validate_scenario(doc, strict);
}

json scenario_to_json(const Scenario& sc) {
    json doc;
    doc["name"] = sc.name;
    doc["nodes"] = sc.network.node_count();
    json links = json::array();
    for (const Link& l : sc.network.links()) links.push_back({l.a, l.b, l.delivery_probability});
    doc["links"] = links;
    json groups = json::array();
    for (const auto& g : sc.constellations.groups()) groups.push_back(g);
    doc["constellations"] = {{"groups", groups}};
    const EnergyModel& m = sc.energy_model;
    doc["energy"] = {{"e_tx_uJ", m.e_tx_uj},         {"e_rv_uJ", m.e_rv_uj},
                     {"e_sense_uJ", m.e_sense_uj},   {"p_active_mW", m.p_active_mw},
                     {"p_sleep_mW", m.p_sleep_mw},   {"initial_J", m.initial_energy_j},
                     {"message_bytes", m.message_bytes}, {"tx_power_dBm", m.tx_power_dbm}};
    doc["period"] = {{"samples", sc.period.samples_per_period},
                     {"interval_s", sc.period.sample_interval_s},
                     {"duty_cycle", sc.period.duty_cycle}};
    json initial = json::object();
    const Energy fallback = Energy::from_joules(m.initial_energy_j);
    for (NodeId v = 1; v < sc.initial_energy.size(); ++v)
        if (sc.initial_energy[v] != fallback) initial[std::to_string(v)] = sc.initial_energy[v].joules();
    if (!initial.empty()) doc["initial_energy_J"] = initial;
    doc["strategy"] = {{"lms_k", sc.lms_k}, {"seeds", sc.seeds}};
    doc["flags"] = {{"count_sink_rx", sc.count_sink_rx}, {"sampled_losses", sc.sampled_losses}};
    return doc;
}

Scenario generate_random(std::size_t n, std::size_t m, double density, std::uint64_t seed, int max_attempts) {
    if (n < 2) throw Error(Errc::InvalidArgument, "need at least 2 nodes");
    if (m < 2 || m > n) throw Error(Errc::InvalidArgument, "group count must satisfy 2 <= m <= n");
    if (!(density > 0 && density <= 1)) throw Error(Errc::InvalidArgument, "density must lie in (0, 1]");
    if (max_attempts < 1) throw Error(Errc::InvalidArgument, "max_attempts must be positive");

    std::mt19937_64 rng(seed);

    // Sink alone; the first m-1 shuffled sensing nodes seed one group each so
    // none is empty, the rest join a uniformly chosen group.
    std::vector<NodeId> order;
    for (NodeId v = 1; v < n; ++v) order.push_back(v);
    for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[detail::uniform_index(rng, i)]);
    std::vector<std::vector<NodeId>> groups(m);
    groups[0] = {kSink};
    for (std::size_t i = 0; i < order.size(); ++i) {
        std::size_t g = i < m - 1 ? i + 1 : 1 + detail::uniform_index(rng, m - 1);
        groups[g].push_back(order[i]);
    }

    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        std::vector<Link> links;
        for (NodeId a = 0; a < n; ++a)
            for (NodeId b = a + 1; b < n; ++b) {
                if (detail::uniform_unit(rng) >= density) continue;
                // Three decimals keep generated files readable.
                double p = std::round((0.5 + 0.5 * detail::uniform_unit(rng)) * 1000.0) / 1000.0;
                links.push_back({a, b, p});
            }
        try {
            Scenario sc;
            sc.name = "random-n" + std::to_string(n) + "-m" + std::to_string(m) + "-s" + std::to_string(seed);
            sc.network = Network::build(n, std::move(links));
            sc.constellations = ConstellationSet::from_groups(n, groups);
            sc.initial_energy.assign(n, Energy::from_joules(sc.energy_model.initial_energy_j));
            sc.initial_energy[kSink] = Energy{};
            sc.seeds = {seed};
            sc.lms_k = std::min<std::size_t>(sc.lms_k, n - 1);
            return sc;
        } catch (const Error& e) {
            if (e.code() != Errc::DisconnectedGraph) throw;
        }
    }
    throw Error(Errc::CouldNotConnect, "no connected graph after " + std::to_string(max_attempts) +
                                           " attempts; raise the density");
}

}  // namespace sleeproute

#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/field.hpp"
#include "dss/flowgraph.hpp"
#include "dss/mds.hpp"
#include "dss/rskr.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace io {

using nlohmann::json;

// Base symbols serialize as decimal integers, packets as integer arrays.

inline json params_to_json(const DssParams& p) {
    return json{{"n", p.n}, {"k", p.k}, {"d", p.d}, {"alpha", p.alpha}, {"beta", p.beta}};
}

inline DssParams params_from_json(const json& j) {
    DssParams p;
    p.n = j.at("n").get<int>();
    p.k = j.at("k").get<int>();
    p.d = j.at("d").get<int>();
    p.alpha = j.at("alpha").get<double>();
    p.beta = j.at("beta").get<double>();
    p.validate();
    return p;
}

inline json threat_to_json(const ThreatModel& t) {
    return json{{"model", threat_name(t.kind)}, {"ell", t.ell}, {"b", t.b}};
}

inline ThreatModel threat_from_json(const json& j, int k) {
    std::string model = j.at("model").get<std::string>();
    int ell = j.value("ell", 0);
    int b = j.value("b", 0);
    if (model == "passive") return ThreatModel::passive(ell);
    if (model == "omniscient") return ThreatModel::omniscient(b, k);
    if (model == "limited") return ThreatModel::limited(ell, b);
    fail(Err::BadThreat, "unknown threat model '" + model + "'");
}

inline json field_to_json(const FieldCfg& cfg) { return json{{"q", cfg.q}, {"v", cfg.v}}; }

inline FieldCfg field_from_json(const json& j) {
    FieldCfg cfg;
    if (j.contains("q")) cfg.q = j.at("q").get<Sym>();
    if (j.contains("v")) cfg.v = j.at("v").get<int>();
    cfg.validate();
    return cfg;
}

inline json layout_to_json(const RskrLayout& l) {
    json nodes = json::object();
    for (int v = 0; v < l.n; ++v) nodes[std::to_string(v)] = l.node_symbols[v];
    json pairs = json::array();
    for (auto [a, b] : l.index_nodes) pairs.push_back(json::array({a, b}));
    return json{{"n", l.n}, {"theta", l.theta}, {"node_symbols", nodes}, {"index_nodes", pairs}};
}

inline json generator_to_json(const NestedGenerator& g, const FieldCfg& cfg) {
    json rows = json::array();
    for (std::size_t r = 0; r < g.g.rows; ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < g.g.cols; ++c) row.push_back(g.g.at(r, c));
        rows.push_back(row);
    }
    return json{{"field", field_to_json(cfg)},
                {"theta", g.theta},
                {"dim", g.dim},
                {"key_dim", g.key_dim},
                {"rows", rows},
                {"eval_points", g.eval_points}};
}

inline NestedGenerator generator_from_json(const PrimeField& f, const json& j) {
    auto rows = j.at("rows");
    std::size_t dim = rows.size();
    require(dim > 0, Err::ShapeError, "generator has no rows");
    std::size_t theta = rows.at(0).size();
    Mat<PrimeField> g(dim, theta, 0);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < theta; ++c) g.at(r, c) = rows.at(r).at(c).get<Sym>();
    return import_generator(f, g, j.at("key_dim").get<std::size_t>());
}

inline flow::Trace trace_from_json(const json& j) {
    flow::Trace t;
    for (const auto& ev : j) {
        std::string kind = ev.at("event").get<std::string>();
        if (kind == "fail") {
            t.events.push_back(flow::Event::fail(ev.at("node").get<int>()));
        } else if (kind == "repair") {
            t.events.push_back(flow::Event::repair(ev.at("node").get<int>(),
                                                   ev.at("helpers").get<std::vector<int>>()));
        } else if (kind == "collect") {
            t.events.push_back(flow::Event::collect(ev.value("collector", 0),
                                                    ev.at("nodes").get<std::vector<int>>()));
        } else {
            fail(Err::BadTrace, "unknown trace event '" + kind + "'");
        }
    }
    return t;
}

inline json collector_view_to_json(const sim::CollectorView& view) {
    json per_node = json::array();
    for (std::size_t i = 0; i < view.per_node.size(); ++i) {
        json items = json::array();
        for (const auto& it : view.per_node[i]) {
            json entry{{"index", it.index}, {"value", it.value}};
            if (!it.hash_row.empty()) entry["hash_row"] = it.hash_row;
            items.push_back(entry);
        }
        per_node.push_back(json{{"node", view.nodes[i]}, {"symbols", items}});
    }
    return json{{"nodes", view.nodes}, {"observation", per_node}};
}

inline json state_to_json(const sim::SystemState& st) {
    json slots = json::array();
    for (int v = 0; v < st.params().n; ++v) {
        json content = json::array();
        for (int idx : st.layout().node_symbols[v]) {
            const auto& copy = st.copy_at(v, idx);
            json entry{{"index", idx}, {"value", copy.value}};
            if (!copy.hash_row.empty()) entry["hash_row"] = copy.hash_row;
            content.push_back(entry);
        }
        slots.push_back(json{{"slot", v},
                             {"vid", st.vid(v)},
                             {"generation", st.generation(v)},
                             {"content", content}});
    }
    json events = json::array();
    for (const auto& ev : st.event_log())
        events.push_back(json{{"slot", ev.slot},
                              {"replacement_vid", ev.replacement_vid},
                              {"generation", ev.generation},
                              {"helpers", ev.helper_slots}});
    return json{{"params", params_to_json(st.params())},
                {"seed", st.seed()},
                {"slots", slots},
                {"event_log", events},
                {"eavesdrop", std::vector<int>(st.eavesdrop_set().begin(), st.eavesdrop_set().end())},
                {"control", std::vector<int>(st.control_set().begin(), st.control_set().end())}};
}

} // namespace io
} // namespace dss

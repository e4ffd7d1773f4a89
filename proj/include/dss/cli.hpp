#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/flowgraph.hpp"
#include "dss/hashshield.hpp"
#include "dss/io.hpp"
#include "dss/mds.hpp"
#include "dss/resilient.hpp"
#include "dss/rng.hpp"
#include "dss/secrecy.hpp"
#include "dss/selftest.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace cli {

using io::json;

struct RunResult {
    int exit_code = 0;
    json output;
};

// exit 0: success; exit 2: malformed scenario; exit 3: model violation
inline int exit_code_for(const DssError& e) {
    switch (e.code()) {
        case Err::ModelViolation:
        case Err::BudgetExceeded:
            return 3;
        default:
            return 2;
    }
}

namespace detail {

inline void check_schema(const json& scenario) {
    require(scenario.value("schema", 0) == 1, Err::BadParams,
            "scenario schema must be 1");
}

// Replay fail/repair events against the simulator. Node ids in the trace are
// v-numbers; replacements take over the failed node's slot. Returns the
// id -> slot map for the surviving incarnations.
inline std::map<int, int> apply_sim_trace(sim::SystemState& st, const json& trace_json) {
    std::map<int, int> active; // vid -> slot
    const int n = st.params().n;
    for (int i = 0; i < n; ++i) active[i] = i;
    int pending_slot = -1;
    int next_vid = n;
    for (const auto& ev : trace_json) {
        std::string kind = ev.at("event").get<std::string>();
        if (kind == "fail") {
            require(pending_slot < 0, Err::BadTrace, "nodes fail one at a time");
            int vid = ev.at("node").get<int>();
            auto it = active.find(vid);
            require(it != active.end(), Err::BadTrace,
                    "failed node " + std::to_string(vid) + " is not active");
            pending_slot = it->second;
            active.erase(it);
        } else if (kind == "repair") {
            require(pending_slot >= 0, Err::BadTrace, "repair without a failure");
            int vid = ev.at("node").get<int>();
            require(vid == next_vid, Err::BadTrace, "replacement ids follow failure order");
            if (ev.contains("helpers")) {
                auto helpers = ev.at("helpers").get<std::vector<int>>();
                require(static_cast<int>(helpers.size()) == st.params().d, Err::BadTrace,
                        "helper set size must equal d");
                for (int h : helpers)
                    require(active.count(h), Err::BadTrace,
                            "helper " + std::to_string(h) + " is not active");
            }
            st.fail_and_repair(pending_slot);
            active[vid] = pending_slot;
            pending_slot = -1;
            ++next_vid;
        } else {
            fail(Err::BadTrace, "simulation traces hold fail/repair events only");
        }
    }
    require(pending_slot < 0, Err::BadTrace, "trace ends with an unrepaired failure");
    return active;
}

inline std::vector<int> collector_slots(const std::map<int, int>& active, const json& collector) {
    std::vector<int> slots;
    for (int vid : collector.get<std::vector<int>>()) {
        auto it = active.find(vid);
        require(it != active.end(), Err::BadCollector,
                "collector node " + std::to_string(vid) + " is not active");
        slots.push_back(it->second);
    }
    return slots;
}

} // namespace detail

inline RunResult run_capacity(const DssParams& p, const ThreatModel& t) {
    auto rep = capacity_report(p, t);
    json out{{"schema", 1},
             {"params", io::params_to_json(p)},
             {"threat", io::threat_to_json(t)},
             {"theta", rep.base.theta},
             {"M", rep.base.M},
             {"R", rep.base.R},
             {"mu", rep.base.mu},
             {"E", rep.base.E},
             {"upper_bound", rep.upper},
             {"asymptotic_ratio", rep.asymptotic}};
    if (p.d == p.n - 1) {
        out["bl_capacity"] = rep.bl;
        out["ratio"] = rep.ratio;
    }
    return {0, out};
}

inline RunResult run_layout(int n) {
    auto l = RskrLayout::build(n);
    json out = io::layout_to_json(l);
    out["schema"] = 1;
    return {0, out};
}

inline RunResult run_mincut(const json& scenario) {
    detail::check_schema(scenario);
    auto p = io::params_from_json(scenario.at("params"));
    auto trace = io::trace_from_json(scenario.at("trace"));
    auto g = flow::FlowGraph::build(p, trace);
    int collector = scenario.value("collector", 0);
    require(g.has_collector(collector), Err::BadParams, "trace defines no such collector");
    std::set<int> deleted;
    if (scenario.contains("deleted"))
        for (int v : scenario.at("deleted").get<std::vector<int>>()) deleted.insert(v);
    auto cut = g.min_cut(collector, deleted);
    return {0, json{{"schema", 1},
                    {"params", io::params_to_json(p)},
                    {"collector", collector},
                    {"deleted", std::vector<int>(deleted.begin(), deleted.end())},
                    {"min_cut", cut}}};
}

// Secrets longer than one chunk are split with fresh keys per chunk; the
// tail chunk is zero-padded.
inline RunResult run_encode_secret(const json& scenario) {
    detail::check_schema(scenario);
    auto p = io::params_from_json(scenario.at("params"));
    auto cfg = io::field_from_json(scenario.value("field", json::object()));
    PrimeField f(cfg.q);
    int ell = scenario.at("ell").get<int>();
    auto secret = scenario.at("secret").get<std::vector<Sym>>();
    for (Sym s : secret)
        require(s < f.order(), Err::BadParams, "secret symbol outside the field");
    std::uint64_t seed = scenario.at("seed").get<std::uint64_t>();

    auto dz = secrecy::design(p, ell);
    auto gen = secrecy::make_generator(f, p, ell);
    Rng rng(seed);
    std::size_t r = static_cast<std::size_t>(dz.R);
    std::size_t chunk_count = secret.empty() ? 1 : (secret.size() + r - 1) / r;
    json chunks = json::array();
    for (std::size_t c = 0; c < chunk_count; ++c) {
        std::vector<Sym> part(r, 0);
        for (std::size_t i = 0; i < r && c * r + i < secret.size(); ++i)
            part[i] = secret[c * r + i];
        auto pkg = secrecy::encode_with_keys(f, gen, [&] {
            std::vector<Sym> keys(gen.key_dim);
            for (auto& kk : keys) kk = f.random(rng);
            return keys;
        }(), part);
        chunks.push_back(json{{"keys", pkg.keys}, {"codeword", pkg.codeword}});
    }
    return {0, json{{"schema", 1},
                    {"params", io::params_to_json(p)},
                    {"ell", ell},
                    {"seed", seed},
                    {"secret_length", secret.size()},
                    {"design",
                     json{{"theta", dz.theta}, {"M", dz.M}, {"R", dz.R}, {"mu", dz.mu}}},
                    {"generator", io::generator_to_json(gen, cfg)},
                    {"chunks", chunks}}};
}

inline RunResult run_decode_secret(const json& scenario) {
    detail::check_schema(scenario);
    const json& package = scenario.at("package");
    auto p = io::params_from_json(package.at("params"));
    auto cfg = io::field_from_json(package.at("generator").at("field"));
    PrimeField f(cfg.q);
    auto gen = io::generator_from_json(f, package.at("generator"));
    int ell = package.at("ell").get<int>();

    std::vector<Sym> recovered;
    for (const auto& chunk : package.at("chunks")) {
        auto codeword = chunk.at("codeword").get<std::vector<Sym>>();
        std::vector<std::vector<Sym>> payload;
        payload.reserve(codeword.size());
        for (Sym s : codeword) payload.push_back({s});
        auto st = sim::SystemState::init(p, ThreatModel::passive(ell), payload, {},
                                         package.value("seed", 0ULL));
        std::map<int, int> active;
        if (scenario.contains("trace"))
            active = detail::apply_sim_trace(st, scenario.at("trace"));
        else
            active = detail::apply_sim_trace(st, json::array());
        auto slots = detail::collector_slots(active, scenario.at("collector"));
        auto secret = secrecy::secret_decode(f, st.collect(slots), gen);
        recovered.insert(recovered.end(), secret.begin(), secret.end());
    }
    std::size_t len = package.value("secret_length", recovered.size());
    recovered.resize(std::min(recovered.size(), len));
    return {0, json{{"schema", 1}, {"secret", recovered}}};
}

namespace detail {

// Shared strategy application for the attack runners. Strategies address
// slots (layout positions) and run before the trace so lies propagate.
inline void apply_strategy(sim::SystemState& st, const PrimeField& f, const json& strategy,
                           int v, Rng& rng) {
    std::string name = strategy.value("name", "none");
    if (name == "none") return;
    if (name == "corrupt-stars") {
        Sym delta = strategy.value("delta", Sym(1));
        for (int slot : strategy.at("slots").get<std::vector<int>>()) {
            st.occupy_eavesdrop(slot);
            st.occupy_control(slot);
            for (int idx : st.layout().node_symbols[slot]) {
                auto value = st.copy_at(slot, idx).value;
                for (auto& coord : value) coord = f.add(coord, delta);
                st.corrupt_stored(slot, idx, value);
                st.set_repair_lie(slot, idx, value);
            }
        }
        return;
    }
    if (name == "assignments") {
        for (const auto& a : strategy.at("set")) {
            int slot = a.at("slot").get<int>();
            st.occupy_eavesdrop(slot);
            st.occupy_control(slot);
            auto value = a.at("value").get<std::vector<Sym>>();
            st.corrupt_stored(slot, a.at("index").get<int>(), value);
            if (a.value("lie", true)) st.set_repair_lie(slot, a.at("index").get<int>(), value);
        }
        return;
    }
    if (name == "erase") {
        int slot = strategy.at("slot").get<int>();
        st.occupy_eavesdrop(slot);
        st.occupy_control(slot);
        st.erase_slot(slot, strategy.value("fill", Sym(0)));
        return;
    }
    if (name == "orthogonal") {
        int slot = strategy.at("slot").get<int>();
        st.occupy_eavesdrop(slot);
        st.occupy_control(slot);
        std::vector<ExtElem> constraints;
        for (const auto& rec : st.eavesdrop_view())
            for (const auto& [idx, copy] : rec.stored) constraints.push_back(copy.value);
        auto e = hashshield::craft_orthogonal_error(f, constraints, v, rng);
        require(e.has_value(), Err::TooLarge, "no orthogonal error exists at this block length");
        Sym lambda = 1;
        for (int idx : st.layout().node_symbols[slot]) {
            auto value = st.copy_at(slot, idx).value;
            for (int t = 0; t < v; ++t)
                value[static_cast<std::size_t>(t)] = f.add(
                    value[static_cast<std::size_t>(t)],
                    f.mul(lambda, (*e)[static_cast<std::size_t>(t)]));
            st.corrupt_stored(slot, idx, value);
            st.set_repair_lie(slot, idx, value);
            lambda = f.add(lambda, 1);
            if (lambda == 0) lambda = 1;
        }
        return;
    }
    fail(Err::BadParams, "unknown strategy '" + name + "'");
}

} // namespace detail

inline RunResult run_attack_omniscient(const json& scenario) {
    detail::check_schema(scenario);
    auto p = io::params_from_json(scenario.at("params"));
    auto cfg = io::field_from_json(scenario.value("field", json::object()));
    PrimeField f(cfg.q);
    int b = scenario.at("threat").value("b", 0);
    std::uint64_t seed = scenario.at("seed").get<std::uint64_t>();
    Rng rng(seed);

    auto code = resilient::make_code(f, p, b);
    std::vector<Sym> msg;
    if (scenario.contains("message")) {
        msg = scenario.at("message").get<std::vector<Sym>>();
    } else {
        msg.resize(static_cast<std::size_t>(code.R));
        for (auto& s : msg) s = f.random(rng);
    }
    auto st = resilient::place(f, p, b, code, msg, seed);
    detail::apply_strategy(st, f, scenario.value("strategy", json{{"name", "none"}}), 1, rng);
    auto active = detail::apply_sim_trace(st, scenario.value("trace", json::array()));
    auto slots = detail::collector_slots(active, scenario.at("collector"));
    auto view = st.collect(slots);
    auto out = resilient::omniscient_decode(f, view, code, st.layout());
    auto suspects = resilient::expurgate(out.corrupted_indices, st.layout());

    // per-copy errors across the whole observation, duplicates included
    auto truth = encode(f, out.message, code.gen);
    std::size_t observed_errors = 0;
    for (const auto& items : view.per_node)
        for (const auto& it : items)
            if (it.value.at(0) != truth[static_cast<std::size_t>(it.index)]) ++observed_errors;

    RunResult result{0, json{{"schema", 1},
                             {"inputs", scenario},
                             {"capacity",
                              json{{"upper_bound", upper_bound(p, ThreatModel::omniscient(b, p.k))},
                                   {"bl_capacity", bl_capacity(p, ThreatModel::omniscient(b, p.k))},
                                   {"achieved_rate", code.R}}},
                             {"decode", json{{"message", out.message},
                                             {"trusted_pattern", out.trusted_pattern},
                                             {"corrupted_indices", out.corrupted_indices}}},
                             {"error_count", out.corrupted_indices.size()},
                             {"observed_errors", observed_errors},
                             {"suspects", suspects},
                             {"correct", out.message == msg}}};
    if (scenario.value("dump_state", false)) result.output["final_state"] = io::state_to_json(st);
    return result;
}

inline RunResult run_attack_limited(const json& scenario) {
    detail::check_schema(scenario);
    auto p = io::params_from_json(scenario.at("params"));
    auto cfg = io::field_from_json(scenario.value("field", json::object()));
    PrimeField f(cfg.q);
    int ell = scenario.at("threat").value("ell", 0);
    int b = scenario.at("threat").value("b", 0);
    std::uint64_t seed = scenario.at("seed").get<std::uint64_t>();
    Rng rng(seed);

    auto dz = hashshield::design(p, ell, b);
    std::vector<ExtElem> msg;
    if (scenario.contains("message")) {
        for (const auto& packet : scenario.at("message"))
            msg.push_back(packet.get<ExtElem>());
        require(msg.size() == static_cast<std::size_t>(dz.R), Err::ShapeError,
                "message must carry R packets");
    } else {
        msg.assign(static_cast<std::size_t>(dz.R), ExtElem(static_cast<std::size_t>(cfg.v), 0));
        for (auto& packet : msg)
            for (auto& c : packet) c = f.random(rng);
    }
    auto pkg = hashshield::shield_encode(f, p, ell, b, cfg.v, msg);
    auto st = hashshield::place(p, ell, b, pkg, seed);
    detail::apply_strategy(st, f, scenario.value("strategy", json{{"name", "none"}}), cfg.v, rng);
    auto active = detail::apply_sim_trace(st, scenario.value("trace", json::array()));
    auto slots = detail::collector_slots(active, scenario.at("collector"));
    auto view = st.collect(slots);
    auto out = hashshield::shield_decode(f, view, pkg.gen, st.layout(), b, cfg.v);

    json message_json = json::array();
    for (const auto& packet : out.message) message_json.push_back(packet);
    RunResult result{0, json{{"schema", 1},
                             {"inputs", scenario},
                             {"capacity",
                              json{{"upper_bound", upper_bound(p, ThreatModel::limited(ell, b))},
                                   {"bl_capacity", bl_capacity(p, ThreatModel::limited(ell, b))},
                                   {"achieved_rate", dz.R}}},
                             {"decode", json{{"message", message_json},
                                             {"candidate_nodes", out.candidate_nodes},
                                             {"erased_indices", out.erased_indices},
                                             {"corrupted_indices", out.corrupted_indices}}},
                             {"error_count", out.corrupted_indices.size()},
                             {"correct", out.message == msg}}};
    if (scenario.value("dump_state", false)) result.output["final_state"] = io::state_to_json(st);
    return result;
}

// Random-network-coding demo: the watched repairs hand the eavesdropper a
// full-rank view of the file, so the secrecy rate of the scheme is zero.
inline RunResult run_rnc_demo(std::uint64_t seed, Sym q) {
    PrimeField f(q);
    Rng rng(seed);
    const int file_symbols = 6;
    const int per_node = 3;

    // initial nodes hold random combinations of the 6 file symbols
    std::vector<Mat<PrimeField>> coeffs(4, Mat<PrimeField>::zero(f, per_node, file_symbols));
    for (auto& m : coeffs)
        for (auto& e : m.a) e = f.random(rng);

    auto combine = [&](const Mat<PrimeField>& rows) {
        // one fresh random combination of the given coefficient rows
        std::vector<Sym> out(file_symbols, 0);
        for (std::size_t r = 0; r < rows.rows; ++r) {
            Sym c = f.random(rng);
            for (int j = 0; j < file_symbols; ++j)
                out[static_cast<std::size_t>(j)] =
                    f.add(out[static_cast<std::size_t>(j)],
                          f.mul(c, rows.at(r, static_cast<std::size_t>(j))));
        }
        return out;
    };

    // node 3 fails; its replacement downloads one combination from each of
    // nodes 0..2, which the eavesdropper records; then the replacement fails
    // in turn and the next one repeats the process under her watch
    Mat<PrimeField> eve = Mat<PrimeField>::zero(f, 2 * per_node, file_symbols);
    std::size_t row = 0;
    for (int round = 0; round < 2; ++round)
        for (int helper = 0; helper < 3; ++helper) {
            auto combo = combine(coeffs[static_cast<std::size_t>(helper)]);
            for (int j = 0; j < file_symbols; ++j)
                eve.at(row, static_cast<std::size_t>(j)) = combo[static_cast<std::size_t>(j)];
            ++row;
        }

    auto eve_rank = rank(f, eve);
    bool full = eve_rank == static_cast<std::size_t>(file_symbols);
    return {0, json{{"schema", 1},
                    {"q", q},
                    {"seed", seed},
                    {"file_symbols", file_symbols},
                    {"eve_rank", eve_rank},
                    {"full_recovery", full},
                    {"secrecy_rate", 0}}};
}

inline RunResult run_verify(bool exhaustive, int jobs = 1) {
    auto results = selftest::run_all(exhaustive, jobs);
    json checks = json::array();
    bool all_ok = true;
    for (const auto& r : results) {
        checks.push_back(json{{"name", r.name}, {"ok", r.ok}, {"detail", r.detail}});
        all_ok = all_ok && r.ok;
    }
    return {all_ok ? 0 : 1, json{{"schema", 1}, {"ok", all_ok}, {"checks", checks}}};
}

} // namespace cli
} // namespace dss

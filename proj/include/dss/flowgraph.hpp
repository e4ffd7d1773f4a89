#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"

namespace dss {
namespace flow {

// Failure/repair/collect history. Storage nodes carry ids 0..n-1 initially;
// the replacement for the i-th failure must be node n+i. Repairs reference
// the immediately preceding failure.
struct Event {
    enum class Kind { Fail, Repair, Collect };
    Kind kind;
    int node = -1;              // Fail: failed node; Repair: replacement node
    std::vector<int> helpers;   // Repair only
    int collector = -1;         // Collect only
    std::vector<int> nodes;     // Collect only

    static Event fail(int node) { return {Kind::Fail, node, {}, -1, {}}; }
    static Event repair(int node, std::vector<int> helpers) {
        return {Kind::Repair, node, std::move(helpers), -1, {}};
    }
    static Event collect(int collector, std::vector<int> nodes) {
        return {Kind::Collect, -1, {}, collector, std::move(nodes)};
    }
};

struct Trace {
    std::vector<Event> events;
};

// Information flow graph: a source feeding the initial nodes, an alpha edge
// inside every storage node, beta edges from helpers into replacements, and
// infinite edges into collectors. Capacities are integer symbol counts.
class FlowGraph {
public:
    static FlowGraph build(const DssParams& p, const Trace& trace) {
        p.validate();
        require(p.integral(), Err::BadParams, "flow graph capacities must be integral");
        FlowGraph g;
        g.alpha_ = static_cast<std::int64_t>(p.alpha);
        g.beta_ = static_cast<std::int64_t>(p.beta);
        // sentinel strictly above any finite cut
        g.inf_ = static_cast<std::int64_t>(p.k) * g.alpha_ +
                 static_cast<std::int64_t>(p.d) * g.beta_ *
                     static_cast<std::int64_t>(trace.events.size() + 1) +
                 1;
        g.source_ = g.new_vertex();

        std::set<int> active;
        for (int i = 0; i < p.n; ++i) {
            g.add_storage(i);
            g.add_edge(g.source_, g.in_of(i), g.inf_);
            active.insert(i);
        }
        int failures = 0;
        int awaiting_repair = -1;
        for (const auto& ev : trace.events) {
            switch (ev.kind) {
                case Event::Kind::Fail: {
                    require(awaiting_repair < 0, Err::BadTrace,
                            "nodes fail one at a time; repair the previous failure first");
                    require(active.count(ev.node), Err::BadTrace,
                            "failed node " + std::to_string(ev.node) + " is not active");
                    active.erase(ev.node);
                    awaiting_repair = ev.node;
                    ++failures;
                    break;
                }
                case Event::Kind::Repair: {
                    require(awaiting_repair >= 0, Err::BadTrace, "repair without a failure");
                    require(ev.node == p.n + failures - 1, Err::BadTrace,
                            "replacement ids are assigned in failure order");
                    require(static_cast<int>(ev.helpers.size()) == p.d, Err::BadTrace,
                            "helper set size must equal d");
                    g.add_storage(ev.node);
                    for (int h : ev.helpers) {
                        require(active.count(h), Err::BadTrace,
                                "helper " + std::to_string(h) + " is not active");
                        g.add_edge(g.out_of(h), g.in_of(ev.node), g.beta_);
                    }
                    active.insert(ev.node);
                    awaiting_repair = -1;
                    break;
                }
                case Event::Kind::Collect: {
                    require(static_cast<int>(ev.nodes.size()) == p.k, Err::BadTrace,
                            "a collector contacts exactly k nodes");
                    require(!g.collectors_.count(ev.collector), Err::BadTrace,
                            "duplicate collector id");
                    int c = g.new_vertex();
                    g.collectors_[ev.collector] = c;
                    for (int v : ev.nodes) {
                        require(active.count(v), Err::BadTrace,
                                "collected node " + std::to_string(v) + " is not active");
                        g.add_edge(g.out_of(v), c, g.inf_);
                    }
                    break;
                }
            }
        }
        return g;
    }

    // Max-flow from the source to a collector after removing the named
    // storage nodes (both halves of each pair, all their edges).
    std::int64_t min_cut(int collector, const std::set<int>& deleted) const {
        auto it = collectors_.find(collector);
        require(it != collectors_.end(), Err::BadParams, "unknown collector");
        std::set<int> dead_vertices;
        for (int v : deleted) {
            auto s = storage_.find(v);
            if (s == storage_.end()) continue;
            dead_vertices.insert(s->second.in);
            dead_vertices.insert(s->second.out);
        }
        return max_flow(source_, it->second, dead_vertices);
    }

    bool has_collector(int collector) const { return collectors_.count(collector) > 0; }

    std::size_t vertex_count() const { return adj_.size(); }

private:
    struct Pair {
        int in = -1;
        int out = -1;
    };
    struct Edge {
        int to;
        std::int64_t cap;
        std::size_t rev; // index of the reverse edge in adj_[to]
    };

    int new_vertex() {
        adj_.emplace_back();
        return static_cast<int>(adj_.size()) - 1;
    }

    void add_storage(int id) {
        Pair pr;
        pr.in = new_vertex();
        pr.out = new_vertex();
        storage_[id] = pr;
        add_edge(pr.in, pr.out, alpha_);
    }

    int in_of(int id) const { return storage_.at(id).in; }
    int out_of(int id) const { return storage_.at(id).out; }

    void add_edge(int from, int to, std::int64_t cap) {
        adj_[from].push_back({to, cap, adj_[to].size()});
        adj_[to].push_back({from, 0, adj_[from].size() - 1});
    }

    std::int64_t max_flow(int s, int t, const std::set<int>& dead) const {
        // Edmonds-Karp on a residual copy; graphs here stay tiny.
        auto residual = adj_;
        std::int64_t total = 0;
        while (true) {
            std::vector<std::pair<int, std::size_t>> parent(residual.size(), {-1, 0});
            parent[s] = {s, 0};
            std::deque<int> queue{s};
            while (!queue.empty() && parent[t].first < 0) {
                int u = queue.front();
                queue.pop_front();
                for (std::size_t i = 0; i < residual[u].size(); ++i) {
                    const auto& e = residual[u][i];
                    if (e.cap <= 0 || parent[e.to].first >= 0 || dead.count(e.to) ||
                        dead.count(u))
                        continue;
                    parent[e.to] = {u, i};
                    queue.push_back(e.to);
                }
            }
            if (parent[t].first < 0) break;
            std::int64_t push = inf_;
            for (int v = t; v != s;) {
                auto [u, i] = parent[v];
                push = std::min(push, residual[u][i].cap);
                v = u;
            }
            for (int v = t; v != s;) {
                auto [u, i] = parent[v];
                residual[u][i].cap -= push;
                residual[residual[u][i].to][residual[u][i].rev].cap += push;
                v = u;
            }
            total += push;
        }
        return total;
    }

    std::int64_t alpha_ = 0, beta_ = 0, inf_ = 0;
    int source_ = -1;
    std::map<int, Pair> storage_;
    std::map<int, int> collectors_;
    std::vector<std::vector<Edge>> adj_;
};

// The worst-case history behind the cut bounds: nodes 0..k-1 fail in order,
// each replacement downloads from all n-1 active nodes, and a collector
// contacts the k replacements.
inline Trace worst_case_trace(const DssParams& p, int collector = 0) {
    require(p.d == p.n - 1, Err::BadParams, "worst-case trace assumes d = n-1");
    Trace t;
    std::set<int> active;
    for (int i = 0; i < p.n; ++i) active.insert(i);
    std::vector<int> replacements;
    for (int i = 0; i < p.k; ++i) {
        t.events.push_back(Event::fail(i));
        active.erase(i);
        std::vector<int> helpers(active.begin(), active.end());
        int replacement = p.n + i;
        t.events.push_back(Event::repair(replacement, helpers));
        active.insert(replacement);
        replacements.push_back(replacement);
    }
    t.events.push_back(Event::collect(collector, replacements));
    return t;
}

} // namespace flow
} // namespace dss

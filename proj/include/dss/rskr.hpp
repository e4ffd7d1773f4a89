#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "dss/errors.hpp"

namespace dss {

// Placement of theta = n(n-1)/2 coded symbols onto n nodes via the complete
// graph: symbol index e is the e-th edge of K_n in lexicographic order and
// lives on exactly the two nodes it joins. Nodes and symbol indices are
// 0-based.
struct RskrLayout {
    int n = 0;
    int theta = 0;
    std::vector<std::vector<int>> node_symbols;    // node -> sorted incident indices (n-1 each)
    std::vector<std::pair<int, int>> index_nodes;  // index -> the node pair storing it

    static RskrLayout build(int n) {
        require(n >= 2, Err::BadParams, "layout needs at least 2 nodes");
        RskrLayout l;
        l.n = n;
        l.theta = n * (n - 1) / 2;
        l.node_symbols.assign(n, {});
        l.index_nodes.reserve(l.theta);
        int idx = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                l.index_nodes.emplace_back(i, j);
                l.node_symbols[i].push_back(idx);
                l.node_symbols[j].push_back(idx);
                ++idx;
            }
        return l;
    }

    void check_node(int i) const {
        require(i >= 0 && i < n, Err::BadParams, "node id out of range");
    }

    // The unique symbol index two distinct nodes have in common.
    int shared_index(int i, int j) const {
        check_node(i);
        check_node(j);
        require(i != j, Err::BadParams, "a node shares no unique symbol with itself");
        if (i > j) std::swap(i, j);
        // edges are enumerated lexicographically; count edges before (i, j)
        int before = i * n - i * (i + 1) / 2;
        return before + (j - i - 1);
    }

    // For each survivor, the single symbol it contributes to rebuild the
    // failed node. The union of contributed indices is exactly the lost set.
    std::vector<std::pair<int, int>> repair_plan(int failed) const {
        check_node(failed);
        std::vector<std::pair<int, int>> plan;
        plan.reserve(n - 1);
        for (int h = 0; h < n; ++h) {
            if (h == failed) continue;
            plan.emplace_back(h, shared_index(h, failed));
        }
        return plan;
    }
};

} // namespace dss

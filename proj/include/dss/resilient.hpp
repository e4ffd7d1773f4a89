#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/mds.hpp"
#include "dss/rskr.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace resilient {

// (theta, R) outer code sized for an omniscient adversary on b nodes.
struct ResilientCode {
    NestedGenerator gen;
    int b = 0;
    long long M = 0;
    long long R = 0;
};

inline long long rate_for(const DssParams& p, int b) {
    long long r = 0;
    for (int i = 2 * b + 1; i <= p.k; ++i) r += p.n - i;
    return r;
}

inline ResilientCode make_code(const PrimeField& f, const DssParams& p, int b) {
    p.validate();
    require(p.d == p.n - 1, Err::NotSupported, "scheme requires d = n-1");
    require(p.beta == 1.0 && p.alpha == static_cast<double>(p.n - 1), Err::NotSupported,
            "one chunk operates at beta = 1, alpha = n-1");
    require(b >= 0, Err::BadParams, "negative adversary budget");
    require(2 * b < p.k, Err::CapacityZero,
            "with 2b >= k nothing can be stored reliably");
    ResilientCode code;
    code.b = b;
    code.R = rate_for(p, b);
    for (int i = 1; i <= p.k; ++i) code.M += p.n - i;
    std::size_t theta = static_cast<std::size_t>(p.n) * (p.n - 1) / 2;
    if (code.R == 1) {
        // repetition row; valid over any field, including GF(2)
        code.gen = import_generator(f, Mat<PrimeField>(1, theta, f.one()), 0);
    } else {
        code.gen = vandermonde_nested(theta, static_cast<std::size_t>(code.R), 0, f);
    }
    return code;
}

inline sim::SystemState place(const PrimeField& f, const DssParams& p, int b,
                              const ResilientCode& code, const std::vector<Sym>& msg,
                              std::uint64_t seed) {
    require(msg.size() == static_cast<std::size_t>(code.R), Err::ShapeError,
            "message length must equal the code rate");
    auto cw = encode(f, msg, code.gen);
    std::vector<std::vector<Sym>> payload;
    payload.reserve(cw.size());
    for (Sym s : cw) payload.push_back({s});
    return sim::SystemState::init(p, ThreatModel::omniscient(b, p.k), payload, {}, seed);
}

struct DecodeOutcome {
    std::vector<Sym> message;
    std::vector<int> trusted_pattern;    // node subset B whose puncture checked out
    std::vector<int> corrupted_indices;  // where the observation disagrees with the re-encode
};

// Sweep node subsets B of size b in lexicographic order; puncture the
// collector's code and observation by the indices stored on B, and accept
// the first zero syndrome. The repetition structure keeps every puncture
// within the minimum distance, so the accepted word pins the message.
inline DecodeOutcome omniscient_decode(const PrimeField& f, const sim::CollectorView& view,
                                       const ResilientCode& code, const RskrLayout& layout) {
    auto items = view.distinct();
    const std::size_t m = items.size();
    require(m >= static_cast<std::size_t>(code.R), Err::TooFewSymbols,
            "observation smaller than the code rate");

    std::vector<std::size_t> positions(m);
    std::vector<Sym> y(m);
    for (std::size_t i = 0; i < m; ++i) {
        positions[i] = static_cast<std::size_t>(items[i].index);
        y[i] = items[i].value.at(0);
    }
    auto code_m = code.gen.g.take_columns(positions); // (M, R) generator

    DecodeOutcome out;
    bool found = false;
    dss::detail::for_each_subset(
        static_cast<std::size_t>(layout.n), static_cast<std::size_t>(code.b),
        [&](const std::vector<std::size_t>& nodes) {
            std::set<int> excluded;
            for (auto v : nodes)
                for (int idx : layout.node_symbols[static_cast<int>(v)]) excluded.insert(idx);
            std::vector<std::size_t> keep;
            std::vector<Sym> y_kept;
            for (std::size_t i = 0; i < m; ++i) {
                if (excluded.count(static_cast<int>(positions[i]))) continue;
                keep.push_back(i);
                y_kept.push_back(y[i]);
            }
            auto punctured = code_m.take_columns(keep);
            auto h = nullspace(f, punctured);
            if (!is_zero_syndrome(mat_vec(f, h, y_kept))) return true;
            // zero syndrome: decode from the punctured word
            std::vector<std::pair<std::size_t, Sym>> obs;
            for (std::size_t i = 0; i < keep.size(); ++i)
                obs.push_back({positions[keep[i]], y_kept[i]});
            out.message = erasure_decode(f, obs, code.gen);
            for (auto v : nodes) out.trusted_pattern.push_back(static_cast<int>(v));
            found = true;
            return false;
        });
    require(found, Err::ModelViolation,
            "no trusted subset found; the adversary exceeded its model");

    auto truth = encode(f, out.message, code.gen);
    for (std::size_t i = 0; i < m; ++i)
        if (y[i] != truth[positions[i]]) out.corrupted_indices.push_back(static_cast<int>(positions[i]));
    return out;
}

// Suspects = union of all minimum vertex covers of the corrupted-index edge
// set in the complete graph (indices are edges, nodes are vertices). Every
// guilty pattern must cover the reported edges, so the minimum covers pin
// down who could have done it; the union stays within 2b nodes.
inline std::vector<int> expurgate(const std::vector<int>& corrupted_indices,
                                  const RskrLayout& layout) {
    if (corrupted_indices.empty()) return {};
    std::set<int> distinct(corrupted_indices.begin(), corrupted_indices.end());
    std::vector<std::pair<int, int>> edges;
    std::set<int> endpoints;
    for (int idx : distinct) {
        require(idx >= 0 && idx < layout.theta, Err::BadParams, "corrupted index out of range");
        auto [a, b] = layout.index_nodes[idx];
        edges.push_back({a, b});
        endpoints.insert(a);
        endpoints.insert(b);
    }
    std::vector<int> verts(endpoints.begin(), endpoints.end());
    auto covers = [&](const std::vector<std::size_t>& subset) {
        for (const auto& [a, b] : edges) {
            bool hit = false;
            for (auto s : subset)
                if (verts[s] == a || verts[s] == b) {
                    hit = true;
                    break;
                }
            if (!hit) return false;
        }
        return true;
    };
    for (std::size_t size = 1; size <= verts.size(); ++size) {
        std::set<int> suspects;
        bool any = false;
        dss::detail::for_each_subset(verts.size(), size, [&](const std::vector<std::size_t>& sub) {
            if (covers(sub)) {
                any = true;
                for (auto s : sub) suspects.insert(verts[s]);
            }
            return true;
        });
        if (any) return std::vector<int>(suspects.begin(), suspects.end());
    }
    return verts; // unreachable: the full endpoint set always covers
}

} // namespace resilient
} // namespace dss

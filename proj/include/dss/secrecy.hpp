#pragma once

#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/mds.hpp"
#include "dss/rng.hpp"
#include "dss/rskr.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace secrecy {

// Everything needed to reproduce one coset encoding: the nested generator,
// the drawn keys, the secret, and the resulting codeword of theta symbols.
struct SecretPackage {
    NestedGenerator gen;
    std::vector<Sym> keys;
    std::vector<Sym> secret;
    std::vector<Sym> codeword;
};

struct Design {
    long long theta = 0;
    long long M = 0;
    long long R = 0;  // secret symbols per chunk
    long long mu = 0; // keys per chunk
};

// Integer design quantities at the operating point d = n-1, alpha = gamma,
// beta = 1 (one chunk).
inline Design design(const DssParams& p, int ell) {
    p.validate();
    require(p.d == p.n - 1, Err::NotSupported, "secrecy scheme requires d = n-1");
    require(p.beta == 1.0 && p.alpha == static_cast<double>(p.n - 1), Err::NotSupported,
            "one chunk operates at beta = 1, alpha = n-1");
    require(ell >= 0, Err::BadParams, "negative eavesdropper budget");
    require(ell < p.k, Err::AdversaryTooStrong,
            "with ell >= k the eavesdropper decodes like a collector; capacity is zero");
    Design d;
    d.theta = static_cast<long long>(p.n) * (p.n - 1) / 2;
    for (int i = 1; i <= p.k; ++i) d.M += p.n - i;
    for (int i = ell + 1; i <= p.k; ++i) d.R += p.n - i;
    d.mu = d.M - d.R;
    return d;
}

// Nested Vandermonde outer code for the scheme; needs q > theta.
inline NestedGenerator make_generator(const PrimeField& f, const DssParams& p, int ell) {
    auto dz = design(p, ell);
    return vandermonde_nested(static_cast<std::size_t>(dz.theta),
                              static_cast<std::size_t>(dz.M),
                              static_cast<std::size_t>(dz.mu), f);
}

inline SecretPackage encode_with_keys(const PrimeField& f, const NestedGenerator& gen,
                                      const std::vector<Sym>& keys,
                                      const std::vector<Sym>& secret) {
    require(keys.size() == gen.key_dim, Err::ShapeError, "key count must equal key_dim");
    require(secret.size() == gen.dim - gen.key_dim, Err::ShapeError,
            "secret length must equal dim - key_dim");
    SecretPackage pkg;
    pkg.gen = gen;
    pkg.keys = keys;
    pkg.secret = secret;
    std::vector<Sym> msg = keys;
    msg.insert(msg.end(), secret.begin(), secret.end());
    pkg.codeword = encode(f, msg, gen);
    return pkg;
}

// Draw uniform keys, mix the secret through the nested code, and return the
// package; the codeword is what gets placed on the system.
inline SecretPackage secret_encode(const PrimeField& f, const DssParams& p, int ell,
                                   const std::vector<Sym>& secret, Rng& rng) {
    auto gen = make_generator(f, p, ell);
    std::vector<Sym> keys(gen.key_dim);
    for (auto& k : keys) k = f.random(rng);
    return encode_with_keys(f, gen, keys, secret);
}

inline sim::SystemState place(const DssParams& p, int ell, const SecretPackage& pkg,
                              std::uint64_t seed) {
    std::vector<std::vector<Sym>> payload;
    payload.reserve(pkg.codeword.size());
    for (Sym s : pkg.codeword) payload.push_back({s});
    return sim::SystemState::init(p, ThreatModel::passive(ell), payload, {}, seed);
}

// Recover the secret coordinates from a collector's view of an honest system.
inline std::vector<Sym> secret_decode(const PrimeField& f, const sim::CollectorView& view,
                                      const NestedGenerator& gen) {
    auto items = view.distinct();
    require(items.size() >= gen.dim, Err::TooFewSymbols,
            "collector view has fewer distinct symbols than the code dimension");
    std::vector<std::pair<std::size_t, Sym>> obs;
    for (const auto& it : items)
        obs.push_back({static_cast<std::size_t>(it.index), it.value.at(0)});
    auto msg = erasure_decode(f, obs, gen);
    return std::vector<Sym>(msg.begin() + static_cast<long>(gen.key_dim), msg.end());
}

namespace detail {

// Index sets observable by each ell-subset of nodes.
inline std::vector<std::vector<std::size_t>> eavesdrop_patterns(const RskrLayout& layout, int ell) {
    std::vector<std::vector<std::size_t>> patterns;
    std::vector<int> subset;
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(subset.size()) == ell) {
            std::set<int> seen;
            for (int v : subset)
                seen.insert(layout.node_symbols[v].begin(), layout.node_symbols[v].end());
            patterns.emplace_back(seen.begin(), seen.end());
            return;
        }
        for (int v = start; v < layout.n; ++v) {
            subset.push_back(v);
            self(self, v + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
    return patterns;
}

} // namespace detail

// True iff for every ell-subset of nodes the key rows restricted to the
// observed indices have full column rank, i.e. the keys fully randomize the
// view. Valid at the alpha = gamma operating point, where repair-time
// downloads coincide with stored content.
inline bool verify_secrecy_rank(const PrimeField& f, const NestedGenerator& gen,
                                const DssParams& p, int ell) {
    auto layout = RskrLayout::build(p.n);
    require(static_cast<std::size_t>(layout.theta) == gen.theta, Err::ShapeError,
            "generator length must match the layout");
    auto gk = gen.key_rows();
    for (const auto& pattern : detail::eavesdrop_patterns(layout, ell)) {
        if (pattern.size() > gen.key_dim) return false;
        if (rank(f, gk.take_columns(pattern)) != pattern.size()) return false;
    }
    return true;
}

// Exhaustive mutual information oracle, in q-ary symbol units. Enumerates
// every (secret, key) assignment per eavesdrop pattern and tabulates the
// view distribution; returns the maximum I(S; view) over patterns.
inline double verify_secrecy_bruteforce(const PrimeField& f, const NestedGenerator& gen,
                                        const DssParams& p, int ell) {
    const Sym q = f.order();
    const std::size_t r = gen.dim - gen.key_dim;
    double states = std::pow(static_cast<double>(q), static_cast<double>(gen.dim));
    require(states <= 4e6, Err::TooLarge, "state space too large for exhaustive verification");
    if (ell == 0) return 0.0;

    auto layout = RskrLayout::build(p.n);
    std::uint64_t n_secrets = 1, n_keys = 1;
    for (std::size_t i = 0; i < r; ++i) n_secrets *= q;
    for (std::size_t i = 0; i < gen.key_dim; ++i) n_keys *= q;

    double max_mi = 0.0;
    for (const auto& pattern : detail::eavesdrop_patterns(layout, ell)) {
        auto sub = gen.g.take_columns(pattern);
        // joint tally: view -> per-secret counts
        std::map<std::vector<Sym>, std::vector<std::uint64_t>> tally;
        std::vector<Sym> msg(gen.dim, 0);
        for (std::uint64_t sidx = 0; sidx < n_secrets; ++sidx) {
            std::uint64_t sv = sidx;
            for (std::size_t i = 0; i < r; ++i) {
                msg[gen.key_dim + i] = sv % q;
                sv /= q;
            }
            for (std::uint64_t kidx = 0; kidx < n_keys; ++kidx) {
                std::uint64_t kv = kidx;
                for (std::size_t i = 0; i < gen.key_dim; ++i) {
                    msg[i] = kv % q;
                    kv /= q;
                }
                auto view = vec_mat(f, msg, sub);
                auto& row = tally[view];
                if (row.empty()) row.assign(n_secrets, 0);
                row[sidx] += 1;
            }
        }
        // I(S;V) = sum_v sum_s p(s,v) log_q( p(v|s) / p(v) ), exact zero when
        // every view row is flat across secrets
        const double total = static_cast<double>(n_secrets) * static_cast<double>(n_keys);
        double mi = 0.0;
        for (const auto& [view, row] : tally) {
            std::uint64_t view_total = 0;
            for (auto c : row) view_total += c;
            for (std::uint64_t c : row) {
                if (c == 0) continue;
                double p_sv = static_cast<double>(c) / total;
                double p_v_given_s = static_cast<double>(c) * n_secrets / total;
                double p_v = static_cast<double>(view_total) / total;
                mi += p_sv * (std::log(p_v_given_s / p_v) / std::log(static_cast<double>(q)));
            }
        }
        max_mi = std::max(max_mi, mi);
    }
    return max_mi;
}

} // namespace secrecy
} // namespace dss

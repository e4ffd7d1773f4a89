#pragma once

#include <functional>
#include <future>
#include <set>
#include <string>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/flowgraph.hpp"
#include "dss/hashshield.hpp"
#include "dss/mds.hpp"
#include "dss/resilient.hpp"
#include "dss/rskr.hpp"
#include "dss/secrecy.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace selftest {

struct CheckResult {
    std::string name;
    bool ok = false;
    std::string detail;
};

namespace detail {

inline DssParams params(int n, int k, int d, double alpha, double beta) {
    DssParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

inline NestedGenerator coset6(const PrimeField& f) {
    Mat<PrimeField> g(6, 6, 0);
    const Sym rows[6][6] = {
        {1, 1, 0, 0, 0, 0}, {1, 0, 1, 0, 0, 0}, {1, 0, 0, 1, 0, 0},
        {1, 0, 0, 0, 1, 0}, {1, 0, 0, 0, 0, 1}, {1, 0, 0, 0, 0, 0},
    };
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) g.at(r, c) = rows[r][c];
    return import_generator(f, g, 5);
}

} // namespace detail

// Invariant suites behind the `verify` subcommand. Sizes are desk-scale by
// default; exhaustive mode widens the sweeps. Checks are independent, so
// they can run on several threads; results keep their declaration order.
inline std::vector<CheckResult> run_all(bool exhaustive, int jobs = 1) {
    std::vector<std::pair<std::string, std::function<bool()>>> checks;
    auto check = [&](const std::string& name, const std::function<bool()>& body) {
        checks.push_back({name, body});
    };

    check("field axioms", [&] {
        for (Sym q : {2ULL, 5ULL, 257ULL}) {
            PrimeField f(q);
            Rng rng(q);
            for (int t = 0; t < (exhaustive ? 2000 : 300); ++t) {
                Sym a = f.random(rng), b = f.random(rng), c = f.random(rng);
                if (f.add(a, f.add(b, c)) != f.add(f.add(a, b), c)) return false;
                if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))) return false;
                if (a != 0 && f.mul(a, f.inv(a)) != 1) return false;
            }
        }
        return true;
    });

    check("matrix rank transpose symmetry", [&] {
        PrimeField f(17);
        Rng rng(2);
        for (int t = 0; t < (exhaustive ? 500 : 100); ++t) {
            std::size_t r = 1 + rng.below(5), c = 1 + rng.below(5);
            Mat<PrimeField> m = Mat<PrimeField>::zero(f, r, c);
            for (auto& e : m.a) e = f.random(rng);
            if (rank(f, m) != rank(f, m.transpose())) return false;
        }
        return true;
    });

    check("mds round trip", [&] {
        PrimeField f(257);
        Rng rng(3);
        std::size_t theta = exhaustive ? 12 : 10;
        auto gen = vandermonde_nested(theta, 5, 0, f);
        for (int t = 0; t < (exhaustive ? 200 : 50); ++t) {
            std::vector<Sym> msg(5);
            for (auto& m : msg) m = f.random(rng);
            auto cw = encode(f, msg, gen);
            std::vector<std::size_t> pos(theta);
            for (std::size_t i = 0; i < theta; ++i) pos[i] = i;
            for (std::size_t i = 0; i < 5; ++i) std::swap(pos[i], pos[i + rng.below(theta - i)]);
            std::vector<std::pair<std::size_t, Sym>> obs;
            for (std::size_t i = 0; i < 5; ++i) obs.push_back({pos[i], cw[pos[i]]});
            if (erasure_decode(f, obs, gen) != msg) return false;
        }
        return true;
    });

    check("nested mds minors", [&] {
        PrimeField f(257);
        std::size_t theta = exhaustive ? 12 : 10;
        auto gen = vandermonde_nested(theta, 5, 4, f);
        bool ok = true;
        dss::detail::for_each_subset(theta, 5, [&](const std::vector<std::size_t>& cols) {
            ok = rank(f, gen.g.take_columns(cols)) == 5;
            return ok;
        });
        if (!ok) return false;
        auto gk = gen.key_rows();
        dss::detail::for_each_subset(theta, 4, [&](const std::vector<std::size_t>& cols) {
            ok = rank(f, gk.take_columns(cols)) == 4;
            return ok;
        });
        return ok;
    });

    check("rskr placement properties", [&] {
        int max_n = exhaustive ? 12 : 8;
        for (int n = 2; n <= max_n; ++n) {
            auto l = RskrLayout::build(n);
            std::vector<int> copies(l.theta, 0);
            for (int v = 0; v < n; ++v) {
                if (static_cast<int>(l.node_symbols[v].size()) != n - 1) return false;
                for (int idx : l.node_symbols[v]) ++copies[idx];
            }
            for (int c : copies)
                if (c != 2) return false;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    int s = l.shared_index(i, j);
                    auto [a, b] = l.index_nodes[s];
                    if (a != i || b != j) return false;
                }
        }
        return true;
    });

    check("capacity bound monotonicity", [&] {
        for (int n = 4; n <= (exhaustive ? 10 : 7); ++n)
            for (int k = 2; k <= n - 1; ++k) {
                auto p = detail::params(n, k, n - 1, n - 1, 1);
                for (int ell = 0; ell + 1 < k; ++ell)
                    if (upper_bound(p, ThreatModel::passive(ell)) <
                        upper_bound(p, ThreatModel::passive(ell + 1)))
                        return false;
            }
        return true;
    });

    check("flow min-cut matches the bound on worst-case histories", [&] {
        for (int n = 4; n <= (exhaustive ? 6 : 5); ++n)
            for (int k = 2; k <= n - 1; ++k) {
                auto p = detail::params(n, k, n - 1, n - 1, 1);
                auto g = flow::FlowGraph::build(p, flow::worst_case_trace(p));
                for (int ell = 0; ell < k; ++ell) {
                    std::set<int> del;
                    for (int i = 0; i < ell; ++i) del.insert(n + i);
                    std::int64_t expect = 0;
                    for (int i = ell + 1; i <= k; ++i) expect += n - i;
                    if (g.min_cut(0, del) != expect) return false;
                }
            }
        return true;
    });

    check("coset scheme leaks nothing (rank and exhaustive MI)", [&] {
        PrimeField f(5);
        auto p = detail::params(4, 3, 3, 3, 1);
        auto gen = detail::coset6(f);
        if (!secrecy::verify_secrecy_rank(f, gen, p, 2)) return false;
        return secrecy::verify_secrecy_bruteforce(f, gen, p, 2) == 0.0;
    });

    check("omniscient decoder over the one-bit sweep", [&] {
        PrimeField f(2);
        auto p = detail::params(4, 3, 3, 3, 1);
        auto code = resilient::make_code(f, p, 1);
        for (Sym bit : {Sym(0), Sym(1)})
            for (int calvin = 0; calvin < 4; ++calvin)
                for (int pattern = 1; pattern < 8; ++pattern) {
                    auto st = resilient::place(f, p, 1, code, {bit}, 1);
                    st.occupy_control(calvin);
                    const auto& mine = st.layout().node_symbols[calvin];
                    for (int t = 0; t < 3; ++t) {
                        if (!(pattern & (1 << t))) continue;
                        Sym flip = f.add(st.copy_at(calvin, mine[t]).value[0], 1);
                        st.corrupt_stored(calvin, mine[t], {flip});
                        st.set_repair_lie(calvin, mine[t], {flip});
                    }
                    for (int skip = 0; skip < 4; ++skip) {
                        std::vector<int> nodes;
                        for (int v = 0; v < 4; ++v)
                            if (v != skip) nodes.push_back(v);
                        auto out = resilient::omniscient_decode(f, st.collect(nodes), code,
                                                                st.layout());
                        if (out.message != std::vector<Sym>{bit}) return false;
                    }
                }
        return true;
    });

    check("secure hash bit zero never flips", [&] {
        PrimeField f(17);
        auto p = detail::params(5, 3, 4, 4, 1);
        auto gen = hashshield::secure_bit_generator(f, p, 1, 1);
        Rng master(1);
        for (int trial = 0; trial < (exhaustive ? 300 : 60); ++trial) {
            Rng rng = master.fork(trial);
            auto sb = hashshield::secure_bit_encode(f, gen, 0, rng);
            std::vector<std::vector<Sym>> payload;
            for (Sym s : sb.codeword) payload.push_back({s});
            auto st = sim::SystemState::init(p, ThreatModel::limited(1, 1), payload, {}, trial);
            int charlie = static_cast<int>(rng.below(5));
            st.occupy_eavesdrop(charlie);
            st.occupy_control(charlie);
            for (int idx : st.layout().node_symbols[charlie])
                st.corrupt_stored(charlie, idx, {f.random(rng)});
            std::vector<int> nodes{charlie};
            for (int v = 0; v < 5 && nodes.size() < 3; ++v)
                if (v != charlie) nodes.push_back(v);
            if (hashshield::secure_bit_decode(f, st.collect(nodes), gen, st.layout(), 1) != 0)
                return false;
        }
        return true;
    });

    auto execute = [](const std::pair<std::string, std::function<bool()>>& c) {
        CheckResult r;
        r.name = c.first;
        try {
            r.ok = c.second();
            if (!r.ok) r.detail = "property violated";
        } catch (const std::exception& e) {
            r.ok = false;
            r.detail = e.what();
        }
        return r;
    };

    std::vector<CheckResult> results(checks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < checks.size(); ++i) results[i] = execute(checks[i]);
        return results;
    }
    std::size_t next = 0;
    while (next < checks.size()) {
        std::size_t batch = std::min<std::size_t>(static_cast<std::size_t>(jobs),
                                                  checks.size() - next);
        std::vector<std::future<CheckResult>> pending;
        pending.reserve(batch);
        for (std::size_t i = 0; i < batch; ++i)
            pending.push_back(std::async(std::launch::async, execute, std::cref(checks[next + i])));
        for (std::size_t i = 0; i < batch; ++i) results[next + i] = pending[i].get();
        next += batch;
    }
    return results;
}

} // namespace selftest
} // namespace dss

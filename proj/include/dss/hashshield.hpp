#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "dss/capacity.hpp"
#include "dss/errors.hpp"
#include "dss/mds.hpp"
#include "dss/rng.hpp"
#include "dss/rskr.hpp"
#include "dss/simulator.hpp"

namespace dss {
namespace hashshield {

// Integer design quantities at beta = 1, d = n-1.
struct Design {
    long long theta = 0;
    long long M = 0;
    long long R = 0; // storable packets
    long long E = 0; // packets the eavesdropper reads
};

inline Design design(const DssParams& p, int ell, int b) {
    p.validate();
    require(p.d == p.n - 1, Err::NotSupported, "scheme requires d = n-1");
    require(p.beta == 1.0 && p.alpha == static_cast<double>(p.n - 1), Err::NotSupported,
            "one chunk operates at beta = 1, alpha = n-1");
    require(b >= 0 && ell >= b, Err::BadThreat, "need b <= ell");
    Design d;
    d.theta = static_cast<long long>(p.n) * (p.n - 1) / 2;
    for (int i = 1; i <= p.k; ++i) d.M += p.n - i;
    for (int i = b + 1; i <= p.k; ++i) d.R += p.n - i;
    for (int i = 1; i <= std::min(ell, p.k); ++i) d.E += p.n - i;
    require(d.E < d.R, Err::AdversaryOmniscient,
            "the eavesdropped content determines the file; the adversary is effectively omniscient");
    return d;
}

// --- packet code: a base-field (theta, R) generator applied coordinate-wise ---

inline std::vector<ExtElem> encode_packets(const PrimeField& f, const NestedGenerator& gen,
                                           const std::vector<ExtElem>& msg, int v) {
    require(msg.size() == gen.dim, Err::ShapeError, "message length must equal code dimension");
    for (const auto& m : msg)
        require(m.size() == static_cast<std::size_t>(v), Err::ShapeError, "packet width mismatch");
    std::vector<ExtElem> out(gen.theta, ExtElem(v, 0));
    for (int t = 0; t < v; ++t) {
        std::vector<Sym> slice(gen.dim);
        for (std::size_t i = 0; i < gen.dim; ++i) slice[i] = msg[i][t];
        auto cw = encode(f, slice, gen);
        for (std::size_t j = 0; j < gen.theta; ++j) out[j][t] = cw[j];
    }
    return out;
}

inline std::vector<ExtElem> erasure_decode_packets(
    const PrimeField& f, const std::vector<std::pair<std::size_t, ExtElem>>& observed,
    const NestedGenerator& gen, int v) {
    require(observed.size() >= gen.dim, Err::TooFewSymbols, "need at least dim packets");
    std::vector<ExtElem> out(gen.dim, ExtElem(v, 0));
    for (int t = 0; t < v; ++t) {
        std::vector<std::pair<std::size_t, Sym>> slice;
        slice.reserve(observed.size());
        for (const auto& [pos, packet] : observed) {
            require(packet.size() == static_cast<std::size_t>(v), Err::ShapeError,
                    "packet width mismatch");
            slice.push_back({pos, packet[t]});
        }
        auto msg = erasure_decode(f, slice, gen);
        for (std::size_t i = 0; i < gen.dim; ++i) out[i][t] = msg[i];
    }
    return out;
}

// --- hash table ---------------------------------------------------------------

// theta x theta symmetric table of pairwise inner products of the packets'
// coefficient vectors.
struct HashTable {
    std::vector<std::vector<Sym>> rows;

    std::size_t size() const { return rows.size(); }
};

inline HashTable hash_table(const PrimeField& f, const std::vector<ExtElem>& packets) {
    HashTable h;
    h.rows.assign(packets.size(), std::vector<Sym>(packets.size(), 0));
    for (std::size_t i = 0; i < packets.size(); ++i)
        for (std::size_t j = i; j < packets.size(); ++j) {
            Sym val = inner_product(f, packets[i], packets[j]);
            h.rows[i][j] = val;
            h.rows[j][i] = val;
        }
    return h;
}

// --- encoding and placement ---------------------------------------------------

struct ShieldPackage {
    NestedGenerator gen;
    std::vector<ExtElem> message;
    std::vector<ExtElem> codeword;
    HashTable hashes;
    Design dz;
};

inline ShieldPackage shield_encode(const PrimeField& f, const DssParams& p, int ell, int b, int v,
                                   const std::vector<ExtElem>& msg) {
    auto dz = design(p, ell, b);
    require(msg.size() == static_cast<std::size_t>(dz.R), Err::ShapeError,
            "message must carry R packets");
    ShieldPackage pkg;
    pkg.dz = dz;
    pkg.gen = vandermonde_nested(static_cast<std::size_t>(dz.theta),
                                 static_cast<std::size_t>(dz.R), 0, f);
    pkg.message = msg;
    pkg.codeword = encode_packets(f, pkg.gen, msg, v);
    pkg.hashes = hash_table(f, pkg.codeword);
    return pkg;
}

inline sim::SystemState place(const DssParams& p, int ell, int b, const ShieldPackage& pkg,
                              std::uint64_t seed, bool sidecar_secure = true) {
    std::vector<std::vector<Sym>> payload(pkg.codeword.begin(), pkg.codeword.end());
    return sim::SystemState::init(p, ThreatModel::limited(ell, b), payload, pkg.hashes.rows, seed,
                                  sidecar_secure);
}

// --- comparison table and decoding --------------------------------------------

struct ComparisonTable {
    std::vector<int> indices; // the distinct indices, ascending
    std::vector<std::vector<bool>> agree;
};

// Reference hashes come from the sidecar rows, or from an externally
// recovered table when the sidecar is materialized through secure bits.
inline ComparisonTable compare(const PrimeField& f, const sim::CollectorView& view,
                               const HashTable* recovered = nullptr) {
    auto items = view.distinct();
    ComparisonTable table;
    table.indices.reserve(items.size());
    for (const auto& it : items) {
        require(recovered || !it.hash_row.empty(), Err::NoSidecar,
                "observation carries no hash rows");
        table.indices.push_back(it.index);
    }
    const std::size_t m = items.size();
    table.agree.assign(m, std::vector<bool>(m, false));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Sym computed = inner_product(f, items[i].value, items[j].value);
            Sym stored = recovered
                             ? recovered->rows.at(static_cast<std::size_t>(items[i].index))
                                   .at(static_cast<std::size_t>(items[j].index))
                             : items[i].hash_row.at(static_cast<std::size_t>(items[j].index));
            table.agree[i][j] = computed == stored;
        }
    return table;
}

struct ShieldOutcome {
    std::vector<ExtElem> message;
    std::vector<int> candidate_nodes;  // the subset B whose exclusion checked out
    std::vector<int> erased_indices;   // indices set aside as erasures
    std::vector<int> corrupted_indices;
};

// Sweep candidate controlled sets B lexicographically. The symbols not
// stored on B form the candidate trusted set; if their comparison sub-table
// is all-agree, erase the rest and decode.
inline ShieldOutcome shield_decode(const PrimeField& f, const sim::CollectorView& view,
                                   const NestedGenerator& gen, const RskrLayout& layout, int b,
                                   int v, const HashTable* recovered = nullptr) {
    auto items = view.distinct();
    auto table = compare(f, view, recovered);
    const std::size_t m = items.size();

    ShieldOutcome out;
    bool found = false;
    dss::detail::for_each_subset(
        static_cast<std::size_t>(layout.n), static_cast<std::size_t>(b),
        [&](const std::vector<std::size_t>& nodes) {
            std::set<int> excluded;
            for (auto nd : nodes)
                for (int idx : layout.node_symbols[static_cast<int>(nd)]) excluded.insert(idx);
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < m; ++i)
                if (!excluded.count(items[i].index)) keep.push_back(i);
            for (std::size_t a : keep)
                for (std::size_t c : keep)
                    if (!table.agree[a][c]) return true;
            // candidate trusted set is hash-consistent; decode with the rest erased
            std::vector<std::pair<std::size_t, ExtElem>> obs;
            for (std::size_t i : keep)
                obs.push_back({static_cast<std::size_t>(items[i].index), items[i].value});
            std::vector<ExtElem> message;
            try {
                message = erasure_decode_packets(f, obs, gen, v);
            } catch (const DssError&) {
                return true; // hash-consistent but not a codeword; keep sweeping
            }
            out.message = std::move(message);
            for (auto nd : nodes) out.candidate_nodes.push_back(static_cast<int>(nd));
            std::set<int> kept_indices;
            for (std::size_t i : keep) kept_indices.insert(items[i].index);
            for (const auto& it : items)
                if (!kept_indices.count(it.index)) out.erased_indices.push_back(it.index);
            found = true;
            return false;
        });
    require(found, Err::ModelViolation,
            "no hash-consistent candidate; the adversary exceeded its model");

    auto truth = encode_packets(f, gen, out.message, v);
    for (const auto& it : items)
        if (it.value != truth[static_cast<std::size_t>(it.index)])
            out.corrupted_indices.push_back(it.index);
    return out;
}

// --- adversary crafting --------------------------------------------------------

// The strongest move the model allows: an error vector orthogonal to every
// packet the intruder has read (keeping his own sub-table consistent) and to
// his guesses at unobserved packets, with <e,e> = 0 so diagonals survive.
inline std::optional<ExtElem> craft_orthogonal_error(const PrimeField& f,
                                                     const std::vector<ExtElem>& constraints,
                                                     int v, Rng& rng, int max_tries = 4096) {
    Mat<PrimeField> m = Mat<PrimeField>::zero(f, constraints.size(), static_cast<std::size_t>(v));
    for (std::size_t r = 0; r < constraints.size(); ++r) {
        require(constraints[r].size() == static_cast<std::size_t>(v), Err::ShapeError,
                "constraint width mismatch");
        for (int c = 0; c < v; ++c) m.at(r, static_cast<std::size_t>(c)) = constraints[r][c];
    }
    auto basis = nullspace(f, m);
    if (basis.rows == 0) return std::nullopt;
    for (int t = 0; t < max_tries; ++t) {
        ExtElem e(static_cast<std::size_t>(v), 0);
        bool nonzero = false;
        for (std::size_t r = 0; r < basis.rows; ++r) {
            Sym c = f.random(rng);
            if (c == 0) continue;
            for (int col = 0; col < v; ++col) {
                e[static_cast<std::size_t>(col)] =
                    f.add(e[static_cast<std::size_t>(col)],
                          f.mul(c, basis.at(r, static_cast<std::size_t>(col))));
            }
        }
        for (Sym s : e) nonzero = nonzero || s != 0;
        if (nonzero && inner_product(f, e, e) == 0) return e;
    }
    return std::nullopt;
}

// --- secure one-bit storage (hash protection) ----------------------------------

struct SecureBit {
    NestedGenerator gen; // (theta, M) nested with key_dim = E
    std::vector<Sym> codeword;
    int bit = 0;
};

inline NestedGenerator secure_bit_generator(const PrimeField& f, const DssParams& p, int ell,
                                            int b) {
    auto dz = design(p, ell, b);
    return vandermonde_nested(static_cast<std::size_t>(dz.theta),
                              static_cast<std::size_t>(dz.M),
                              static_cast<std::size_t>(dz.E), f);
}

inline SecureBit secure_bit_encode(const PrimeField& f, const NestedGenerator& gen, int bit,
                                   Rng& rng) {
    require(bit == 0 || bit == 1, Err::BadParams, "bit must be 0 or 1");
    SecureBit sb;
    sb.gen = gen;
    sb.bit = bit;
    std::vector<Sym> msg(gen.dim, 0);
    for (std::size_t i = 0; i < gen.key_dim; ++i) msg[i] = f.random(rng);
    if (bit == 1)
        for (std::size_t i = gen.key_dim; i < gen.dim; ++i) msg[i] = f.random(rng);
    sb.codeword = encode(f, msg, gen);
    return sb;
}

// Bit 0 iff some puncture of the observation lands in the key sub-code.
inline int secure_bit_decode(const PrimeField& f, const sim::CollectorView& view,
                             const NestedGenerator& gen, const RskrLayout& layout, int b) {
    auto items = view.distinct();
    std::vector<std::size_t> positions(items.size());
    std::vector<Sym> y(items.size());
    for (std::size_t i = 0; i < items.size(); ++i) {
        positions[i] = static_cast<std::size_t>(items[i].index);
        y[i] = items[i].value.at(0);
    }
    auto gk = gen.key_rows();
    int result = 1;
    dss::detail::for_each_subset(
        static_cast<std::size_t>(layout.n), static_cast<std::size_t>(b),
        [&](const std::vector<std::size_t>& nodes) {
            std::set<int> excluded;
            for (auto nd : nodes)
                for (int idx : layout.node_symbols[static_cast<int>(nd)]) excluded.insert(idx);
            std::vector<std::size_t> cols;
            std::vector<Sym> y_kept;
            for (std::size_t i = 0; i < items.size(); ++i) {
                if (excluded.count(items[i].index)) continue;
                cols.push_back(positions[i]);
                y_kept.push_back(y[i]);
            }
            auto sub = gk.take_columns(cols);
            if (solve(f, sub.transpose(), y_kept).has_value()) {
                result = 0;
                return false;
            }
            return true;
        });
    return result;
}

// --- full hash-table protection (the expensive mode) ---------------------------

inline int bits_per_symbol(const PrimeField& f) {
    int bits = 0;
    Sym v = f.order() - 1;
    while (v) {
        ++bits;
        v >>= 1;
    }
    return bits;
}

inline std::vector<int> hash_to_bits(const PrimeField& f, const HashTable& table) {
    int bits = bits_per_symbol(f);
    std::vector<int> out;
    out.reserve(table.size() * table.size() * static_cast<std::size_t>(bits));
    for (const auto& row : table.rows)
        for (Sym s : row)
            for (int t = 0; t < bits; ++t) out.push_back(static_cast<int>((s >> t) & 1));
    return out;
}

inline HashTable bits_to_hash(const PrimeField& f, const std::vector<int>& bits,
                              std::size_t theta) {
    int per = bits_per_symbol(f);
    require(bits.size() == theta * theta * static_cast<std::size_t>(per), Err::ShapeError,
            "bit count does not match the table size");
    HashTable table;
    table.rows.assign(theta, std::vector<Sym>(theta, 0));
    std::size_t at = 0;
    for (std::size_t i = 0; i < theta; ++i)
        for (std::size_t j = 0; j < theta; ++j) {
            Sym s = 0;
            for (int t = 0; t < per; ++t) s |= static_cast<Sym>(bits[at++]) << t;
            table.rows[i][j] = f.reduce(s); // flipped bits may overflow the field

        }
    return table;
}

} // namespace hashshield
} // namespace dss

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "dss/errors.hpp"
#include "dss/field.hpp"
#include "dss/matrix.hpp"

namespace dss {

// Generator of a (theta, dim) MDS code whose first key_dim rows generate a
// (theta, key_dim) MDS code of their own. key_dim = 0 degrades gracefully to
// a plain MDS code. Symbol positions are 0-based throughout.
struct NestedGenerator {
    std::size_t theta = 0;
    std::size_t dim = 0;
    std::size_t key_dim = 0;
    Mat<PrimeField> g;
    std::vector<Sym> eval_points; // empty for user-supplied matrices

    Mat<PrimeField> key_rows() const {
        std::vector<std::size_t> idx(key_dim);
        for (std::size_t i = 0; i < key_dim; ++i) idx[i] = i;
        return g.take_rows(idx);
    }

    Mat<PrimeField> secret_rows() const {
        std::vector<std::size_t> idx(dim - key_dim);
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = key_dim + i;
        return g.take_rows(idx);
    }
};

struct PuncturePattern {
    std::vector<std::size_t> indices; // deleted coordinate positions, sorted

    static PuncturePattern of(std::vector<std::size_t> idx, std::size_t theta) {
        std::sort(idx.begin(), idx.end());
        require(std::adjacent_find(idx.begin(), idx.end()) == idx.end(), Err::BadParams,
                "puncture positions must be distinct");
        require(idx.empty() || idx.back() < theta, Err::BadParams,
                "puncture position out of range");
        return PuncturePattern{std::move(idx)};
    }
};

namespace detail {

// Visit all k-subsets of {0..n-1} in lexicographic order; body returns false
// to stop early.
template <class Body>
void for_each_subset(std::size_t n, std::size_t k, Body&& body) {
    if (k > n) return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        if (!body(idx)) return;
        // next combination in lexicographic order
        std::size_t i = k;
        while (i > 0) {
            --i;
            if (idx[i] != i + n - k) {
                ++idx[i];
                for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
        if (k == 0) return;
    }
}

// Exhaustive check that every dim x dim column submatrix is invertible.
// Returns the first offending column set, or empty if MDS.
inline std::vector<std::size_t> find_mds_violation(const PrimeField& f, const Mat<PrimeField>& g) {
    std::vector<std::size_t> offender;
    for_each_subset(g.cols, g.rows, [&](const std::vector<std::size_t>& cols) {
        if (rank(f, g.take_columns(cols)) != g.rows) {
            offender = cols;
            return false;
        }
        return true;
    });
    return offender;
}

} // namespace detail

// Vandermonde realization: row i holds the i-th powers of theta distinct
// nonzero points, so every square column submatrix is Vandermonde and the
// leading key_dim rows are themselves a lower-dimension MDS generator.
inline NestedGenerator vandermonde_nested(std::size_t theta, std::size_t dim, std::size_t key_dim,
                                          const PrimeField& f,
                                          std::vector<Sym> eval_points = {}) {
    require(dim >= 1 && dim <= theta, Err::BadParams, "need 1 <= dim <= theta");
    require(key_dim < dim, Err::BadParams, "key_dim must be < dim");
    require(f.order() > theta, Err::FieldTooSmall,
            "field order must exceed code length for distinct nonzero points");
    if (eval_points.empty()) {
        eval_points.resize(theta);
        for (std::size_t j = 0; j < theta; ++j) eval_points[j] = static_cast<Sym>(j + 1);
    }
    require(eval_points.size() == theta, Err::BadParams, "need theta evaluation points");
    for (std::size_t i = 0; i < theta; ++i) {
        require(eval_points[i] % f.order() != 0, Err::BadParams, "evaluation points must be nonzero");
        for (std::size_t j = i + 1; j < theta; ++j)
            require(eval_points[i] % f.order() != eval_points[j] % f.order(), Err::BadParams,
                    "evaluation points must be distinct");
    }
    NestedGenerator gen;
    gen.theta = theta;
    gen.dim = dim;
    gen.key_dim = key_dim;
    gen.eval_points = eval_points;
    gen.g = Mat<PrimeField>::zero(f, dim, theta);
    for (std::size_t j = 0; j < theta; ++j) {
        Sym p = f.reduce(eval_points[j]);
        Sym cur = f.one();
        for (std::size_t i = 0; i < dim; ++i) {
            gen.g.at(i, j) = cur;
            cur = f.mul(cur, p);
        }
    }
    return gen;
}

// Validate a user-supplied generator by exhaustive submatrix rank checks.
// Feasible for the sizes this library targets (theta <= 16 or so).
inline NestedGenerator import_generator(const PrimeField& f, const Mat<PrimeField>& g,
                                        std::size_t key_dim) {
    require(g.rows >= 1 && g.rows <= g.cols, Err::ShapeError, "generator must be dim x theta, dim <= theta");
    require(key_dim < g.rows, Err::BadParams, "key_dim must be < dim");
    auto offender = detail::find_mds_violation(f, g);
    if (!offender.empty()) {
        std::string cols;
        for (auto c : offender) cols += std::to_string(c) + " ";
        fail(Err::NotMds, "generator is not MDS; offending columns: " + cols);
    }
    if (key_dim > 0) {
        std::vector<std::size_t> key_idx(key_dim);
        for (std::size_t i = 0; i < key_dim; ++i) key_idx[i] = i;
        auto offender_k = detail::find_mds_violation(f, g.take_rows(key_idx));
        if (!offender_k.empty()) {
            std::string cols;
            for (auto c : offender_k) cols += std::to_string(c) + " ";
            fail(Err::NotMds, "key sub-code is not MDS; offending columns: " + cols);
        }
    }
    NestedGenerator gen;
    gen.theta = g.cols;
    gen.dim = g.rows;
    gen.key_dim = key_dim;
    gen.g = g;
    return gen;
}

// msg is ordered [keys | secret]; codeword = msg * g.
inline std::vector<Sym> encode(const PrimeField& f, const std::vector<Sym>& msg,
                               const NestedGenerator& gen) {
    require(msg.size() == gen.dim, Err::ShapeError, "message length must equal code dimension");
    return vec_mat(f, msg, gen.g);
}

// Observation = (position, value) pairs. Any dim distinct positions determine
// the message; extra positions must be consistent with it.
inline std::vector<Sym> erasure_decode(const PrimeField& f,
                                       const std::vector<std::pair<std::size_t, Sym>>& observed,
                                       const NestedGenerator& gen) {
    std::vector<std::pair<std::size_t, Sym>> obs = observed;
    std::sort(obs.begin(), obs.end());
    for (std::size_t i = 0; i + 1 < obs.size(); ++i)
        require(obs[i].first != obs[i + 1].first, Err::BadParams, "duplicate observation position");
    require(obs.empty() || obs.back().first < gen.theta, Err::BadParams, "position out of range");
    require(obs.size() >= gen.dim, Err::TooFewSymbols,
            "need at least dim observed positions to decode");

    std::vector<std::size_t> cols(gen.dim);
    std::vector<Sym> vals(gen.dim);
    for (std::size_t i = 0; i < gen.dim; ++i) {
        cols[i] = obs[i].first;
        vals[i] = obs[i].second;
    }
    // solve msg * g[:, cols] = vals
    auto sub = gen.g.take_columns(cols);
    auto msg = solve(f, sub.transpose(), vals);
    require(msg.has_value(), Err::NoSolution, "observed positions are not consistent with the code");
    auto codeword = encode(f, *msg, gen);
    for (const auto& [pos, val] : obs)
        require(codeword[pos] == val, Err::NoSolution, "inconsistent observation at position " +
                                                            std::to_string(pos));
    return *msg;
}

// Delete the coordinates in the pattern. Stays MDS while the pattern is
// shorter than the minimum distance.
inline NestedGenerator puncture(const PrimeField& f, const NestedGenerator& gen,
                                const PuncturePattern& pattern) {
    (void)f;
    require(pattern.indices.empty() || pattern.indices.back() < gen.theta, Err::BadParams,
            "puncture position out of range");
    require(pattern.indices.size() < gen.theta - gen.dim + 1, Err::PunctureTooDeep,
            "puncture pattern must be shorter than the minimum distance");
    std::vector<std::size_t> keep;
    keep.reserve(gen.theta - pattern.indices.size());
    std::size_t pi = 0;
    for (std::size_t j = 0; j < gen.theta; ++j) {
        if (pi < pattern.indices.size() && pattern.indices[pi] == j) {
            ++pi;
            continue;
        }
        keep.push_back(j);
    }
    NestedGenerator out;
    out.theta = keep.size();
    out.dim = gen.dim;
    out.key_dim = gen.key_dim;
    out.g = gen.g.take_columns(keep);
    for (auto j : keep)
        if (!gen.eval_points.empty()) out.eval_points.push_back(gen.eval_points[j]);
    return out;
}

// Parity check matrix H with H g^T = 0 and rank (theta - dim).
inline Mat<PrimeField> parity_matrix(const PrimeField& f, const NestedGenerator& gen) {
    return nullspace(f, gen.g);
}

inline std::vector<Sym> syndrome(const PrimeField& f, const Mat<PrimeField>& h,
                                 const std::vector<Sym>& y) {
    require(y.size() == h.cols, Err::ShapeError, "word length must match parity matrix");
    return mat_vec(f, h, y);
}

inline bool is_zero_syndrome(const std::vector<Sym>& s) {
    return std::all_of(s.begin(), s.end(), [](Sym x) { return x == 0; });
}

} // namespace dss

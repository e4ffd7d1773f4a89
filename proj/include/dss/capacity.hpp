#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "dss/errors.hpp"

namespace dss {

// System shape. alpha and beta are in symbols of the active base field;
// fractional values are legal for formula evaluation only -- the coding
// modules insist on integers (larger beta is realized by file splitting).
struct DssParams {
    int n = 0;
    int k = 0;
    int d = 0;
    double alpha = 0;
    double beta = 0;

    double gamma() const { return d * beta; }

    void validate() const {
        require(n >= 2, Err::BadParams, "need at least two nodes");
        require(k >= 1 && k <= d && d <= n - 1, Err::BadParams, "need 1 <= k <= d <= n-1");
        require(alpha > 0 && beta > 0, Err::BadParams, "alpha and beta must be positive");
    }

    bool integral() const {
        return alpha == std::floor(alpha) && beta == std::floor(beta);
    }

    static DssParams bandwidth_limited(int n, int k, double Gamma) {
        // d = n-1 and alpha = Gamma maximize every bound in this regime
        DssParams p;
        p.n = n;
        p.k = k;
        p.d = n - 1;
        p.beta = Gamma / (n - 1);
        p.alpha = Gamma;
        p.validate();
        return p;
    }
};

enum class ThreatKind { Passive, Omniscient, Limited };

inline const char* threat_name(ThreatKind k) {
    switch (k) {
        case ThreatKind::Passive: return "passive";
        case ThreatKind::Omniscient: return "omniscient";
        case ThreatKind::Limited: return "limited";
    }
    return "?";
}

struct ThreatModel {
    ThreatKind kind = ThreatKind::Passive;
    int ell = 0; // eavesdropped nodes
    int b = 0;   // controlled nodes

    void validate(const DssParams& p) const {
        require(ell >= 0 && b >= 0, Err::BadThreat, "negative threat parameters");
        switch (kind) {
            case ThreatKind::Passive:
                require(b == 0, Err::BadThreat, "a passive eavesdropper controls nothing");
                require(ell < p.k, Err::BadThreat,
                        "eavesdropping k or more nodes reads the whole file");
                break;
            case ThreatKind::Omniscient:
                // knowledge of all data is the model; ell is implicitly k
                break;
            case ThreatKind::Limited:
                require(b <= ell, Err::BadThreat, "controlled nodes must be eavesdropped first");
                require(ell < p.k, Err::BadThreat, "with ell >= k the adversary is omniscient");
                break;
        }
    }

    // Number of leading summation terms lost to the intruder.
    int skip() const {
        switch (kind) {
            case ThreatKind::Passive: return ell;
            case ThreatKind::Omniscient: return 2 * b;
            case ThreatKind::Limited: return b;
        }
        return 0;
    }

    static ThreatModel passive(int ell) { return {ThreatKind::Passive, ell, 0}; }
    static ThreatModel omniscient(int b, int k) { return {ThreatKind::Omniscient, k, b}; }
    static ThreatModel limited(int ell, int b) { return {ThreatKind::Limited, ell, b}; }
};

struct BaseQuantities {
    long long theta = 0;
    double M = 0;   // capacity with no intruder
    double R = 0;   // securely storable rate under the threat model
    double mu = 0;  // M - R, the key budget (passive model)
    double E = 0;   // what ell eavesdropped nodes can observe
};

namespace capdetail {

inline double tail_min_sum(const DssParams& p, int from_i) {
    double s = 0;
    for (int i = from_i; i <= p.k; ++i)
        s += std::min((p.d - i + 1) * p.beta, p.alpha);
    return s;
}

} // namespace capdetail

inline BaseQuantities base_quantities(const DssParams& p, const ThreatModel& t) {
    p.validate();
    t.validate(p);
    BaseQuantities out;
    out.theta = static_cast<long long>(p.n) * (p.n - 1) / 2;
    out.M = capdetail::tail_min_sum(p, 1);
    int skip = t.skip();
    out.R = skip >= p.k ? 0.0 : capdetail::tail_min_sum(p, skip + 1);
    out.mu = out.M - out.R;
    int ell = t.kind == ThreatKind::Omniscient ? p.k : t.ell;
    double e = 0;
    for (int i = 1; i <= std::min(ell, p.k); ++i)
        e += std::min((p.d - i + 1) * p.beta, p.alpha);
    out.E = e;
    return out;
}

// The general cut-set bound: sum_{i=s+1}^{k} min{(d-i+1)beta, alpha} with s
// leading terms lost to the intruder; identically 0 once s >= k.
inline double upper_bound(const DssParams& p, const ThreatModel& t) {
    p.validate();
    t.validate(p);
    int skip = t.skip();
    if (skip >= p.k) return 0.0;
    return capdetail::tail_min_sum(p, skip + 1);
}

// Achievable capacity in the bandwidth-limited regime (d = n-1, alpha = Gamma).
inline double bl_capacity(const DssParams& p, const ThreatModel& t) {
    p.validate();
    t.validate(p);
    require(p.d == p.n - 1, Err::NotSupported,
            "bandwidth-limited capacity is established only for d = n-1");
    int skip = t.skip();
    if (skip >= p.k) return 0.0;
    if (t.kind == ThreatKind::Limited) {
        auto q = base_quantities(p, t);
        require(q.E < q.R, Err::AdversaryOmniscient,
                "eavesdropping capability reaches the stored rate");
    }
    double s = 0;
    for (int i = skip + 1; i <= p.k; ++i) s += (p.n - i) * p.beta;
    return s;
}

// Limits of bl_capacity / M as n grows with k, ell, b fixed.
inline double asymptotic_ratio(const ThreatModel& t, int k) {
    require(k >= 1, Err::BadParams, "k must be positive");
    int skip = t.skip();
    if (skip >= k) return 0.0;
    return static_cast<double>(k - skip) / k;
}

struct CapacityReport {
    DssParams params;
    ThreatModel threat;
    BaseQuantities base;
    double upper = 0;
    double bl = -1; // -1 when d != n-1
    double ratio = -1;
    double asymptotic = 0;
};

inline CapacityReport capacity_report(const DssParams& p, const ThreatModel& t) {
    CapacityReport r;
    r.params = p;
    r.threat = t;
    r.base = base_quantities(p, t);
    r.upper = upper_bound(p, t);
    if (p.d == p.n - 1) {
        r.bl = bl_capacity(p, t);
        r.ratio = r.base.M > 0 ? r.bl / r.base.M : 0;
    }
    r.asymptotic = asymptotic_ratio(t, p.k);
    return r;
}

} // namespace dss

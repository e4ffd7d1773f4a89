#include <catch2/catch.hpp>

#include "dss/capacity.hpp"

using namespace dss;

namespace {

DssParams params(int n, int k, int d, double alpha, double beta) {
    DssParams p;
    p.n = n;
    p.k = k;
    p.d = d;
    p.alpha = alpha;
    p.beta = beta;
    return p;
}

} // namespace

TEST_CASE("base quantities for the reference systems") {
    // D(4,3,3), beta=1, alpha=3: file capacity 6 on 6 coded symbols
    auto q = base_quantities(params(4, 3, 3, 3, 1), ThreatModel::passive(0));
    CHECK(q.theta == 6);
    CHECK(q.M == 6.0);
    CHECK(q.R == 6.0);

    // D(5,3,4), beta=1, alpha=4, limited b=ell=1: R=5, E=4
    auto ql = base_quantities(params(5, 3, 4, 4, 1), ThreatModel::limited(1, 1));
    CHECK(ql.M == 9.0);
    CHECK(ql.R == 5.0);
    CHECK(ql.E == 4.0);

    // no intruder: bounds collapse to M
    auto q0 = base_quantities(params(6, 4, 5, 5, 1), ThreatModel::limited(0, 0));
    CHECK(q0.R == q0.M);
    CHECK(q0.mu == 0.0);
}

TEST_CASE("upper bounds match the worked examples") {
    CHECK(upper_bound(params(4, 3, 3, 3, 1), ThreatModel::passive(2)) == 1.0);
    CHECK(upper_bound(params(4, 3, 3, 3, 1), ThreatModel::omniscient(1, 3)) == 1.0);
    CHECK(upper_bound(params(4, 3, 3, 3, 1), ThreatModel::omniscient(2, 3)) == 0.0);
    CHECK(upper_bound(params(5, 3, 4, 4, 1), ThreatModel::limited(1, 1)) == 5.0);
}

TEST_CASE("upper bound against hand-computed golden values") {
    struct Row {
        DssParams p;
        ThreatModel t;
        double expect;
    };
    const Row rows[] = {
        {params(6, 4, 4, 2, 1), ThreatModel::passive(1), 5.0},      // 2+2+1
        {params(8, 5, 7, 3, 1), ThreatModel::omniscient(2, 5), 3.0}, // min(3,3)
        {params(8, 4, 6, 5, 2), ThreatModel::passive(2), 10.0},      // min(8,5)+min(6,5)
        {params(5, 3, 3, 2, 1), ThreatModel::limited(2, 1), 3.0},    // min(2,2)+min(1,2)
        {params(5, 3, 4, 4, 1), ThreatModel::omniscient(2, 3), 0.0},
        {params(6, 2, 5, 4, 1), ThreatModel::omniscient(1, 2), 0.0},
        {params(7, 4, 6, 3, 1), ThreatModel::passive(3), 3.0},       // min(3,3)
        {params(7, 4, 6, 3, 1), ThreatModel::limited(3, 2), 6.0},    // min(4,3)+min(3,3)
    };
    for (const auto& r : rows) CHECK(upper_bound(r.p, r.t) == r.expect);
}

TEST_CASE("bandwidth-limited capacities match the worked examples") {
    CHECK(bl_capacity(params(4, 3, 3, 3, 1), ThreatModel::passive(2)) == 1.0);
    CHECK(bl_capacity(params(5, 3, 4, 4, 1), ThreatModel::limited(1, 1)) == 5.0);
    CHECK(bl_capacity(params(4, 3, 3, 3, 1), ThreatModel::omniscient(1, 3)) == 1.0);
    CHECK(bl_capacity(params(4, 3, 3, 3, 1), ThreatModel::omniscient(2, 3)) == 0.0);
}

TEST_CASE("bandwidth-limited capacity requires d = n-1") {
    try {
        bl_capacity(params(5, 3, 3, 3, 1), ThreatModel::passive(1));
        FAIL("expected NotSupported");
    } catch (const DssError& e) {
        CHECK(e.code() == Err::NotSupported);
    }
}

TEST_CASE("limited model with E >= R is rejected as omniscient") {
    // n=4, k=3, d=3, beta=1, alpha=3: ell=2 -> E=5, b=2 -> R=min terms from 3 = 1
    try {
        bl_capacity(params(4, 3, 3, 3, 1), ThreatModel::limited(2, 2));
        FAIL("expected AdversaryOmniscient");
    } catch (const DssError& e) {
        CHECK(e.code() == Err::AdversaryOmniscient);
    }
}

TEST_CASE("threat model validation") {
    auto p = params(5, 3, 4, 4, 1);
    CHECK_THROWS_AS(ThreatModel::passive(3).validate(p), DssError);
    CHECK_THROWS_AS(ThreatModel::limited(1, 2).validate(p), DssError);
    CHECK_THROWS_AS((ThreatModel{ThreatKind::Passive, 1, 1}).validate(p), DssError);
    CHECK_NOTHROW(ThreatModel::omniscient(2, 3).validate(p));
}

TEST_CASE("asymptotic ratios") {
    CHECK(asymptotic_ratio(ThreatModel::passive(2), 3) == Approx(1.0 / 3));
    CHECK(asymptotic_ratio(ThreatModel::omniscient(1, 3), 3) == Approx(1.0 / 3));
    CHECK(asymptotic_ratio(ThreatModel::limited(1, 1), 3) == Approx(2.0 / 3));
    CHECK(asymptotic_ratio(ThreatModel::omniscient(2, 3), 3) == 0.0);

    // finite-n ratio at n = 10^4 approaches the limit within 1e-3
    const int n = 10000;
    for (auto t : {ThreatModel::passive(2), ThreatModel::limited(1, 1)}) {
        auto p = DssParams::bandwidth_limited(n, 3, n - 1.0);
        auto rep = capacity_report(p, t);
        CHECK(std::abs(rep.ratio - rep.asymptotic) < 1e-3);
    }
    {
        DssParams p = DssParams::bandwidth_limited(n, 3, n - 1.0);
        auto rep = capacity_report(p, ThreatModel::omniscient(1, 3));
        CHECK(std::abs(rep.ratio - rep.asymptotic) < 1e-3);
    }
}

TEST_CASE("bounds are monotone in the threat and system parameters") {
    for (int n = 4; n <= 8; ++n)
        for (int k = 2; k <= n - 1; ++k)
            for (int d = k; d <= n - 1; ++d) {
                auto p = params(n, k, d, d, 1);
                for (int ell = 0; ell < k - 1; ++ell) {
                    CHECK(upper_bound(p, ThreatModel::passive(ell)) >=
                          upper_bound(p, ThreatModel::passive(ell + 1)));
                }
                for (int b = 0; 2 * (b + 1) <= k; ++b) {
                    CHECK(upper_bound(p, ThreatModel::omniscient(b, k)) >=
                          upper_bound(p, ThreatModel::omniscient(b + 1, k)));
                }
                // limited-knowledge control is never worse than omniscient control
                for (int b = 0; b < k - 1; ++b) {
                    double ltd = upper_bound(p, ThreatModel::limited(b, b));
                    double omni = upper_bound(p, ThreatModel::omniscient(b, k));
                    CHECK(ltd >= omni);
                    if (b == 0) CHECK(ltd == omni);
                }
            }
}

TEST_CASE("at alpha >= d*beta the min never binds") {
    for (int n = 4; n <= 8; ++n)
        for (int k = 2; k <= n - 1; ++k) {
            auto p = params(n, k, n - 1, (n - 1) * 2.0, 2.0);
            for (int ell = 0; ell < k; ++ell) {
                double expect = 0;
                for (int i = ell + 1; i <= k; ++i) expect += (n - i) * 2.0;
                CHECK(upper_bound(p, ThreatModel::passive(ell)) == expect);
            }
        }
}

#include <catch2/catch.hpp>

#include "dss/field.hpp"
#include "dss/rng.hpp"

using namespace dss;

TEST_CASE("prime field basic arithmetic") {
    PrimeField f5(5);
    CHECK(f5.add(2, 4) == 1);
    CHECK(f5.mul(3, f5.inv(3)) == 1);
    CHECK(f5.sub(1, 3) == 3);
    CHECK(f5.div(4, 2) == 2);

    PrimeField f257(257);
    CHECK(f257.add(256, 1) == 0);
    CHECK(f257.mul(256, 256) == 1); // (-1)^2
}

TEST_CASE("prime field rejects bad moduli and zero division") {
    CHECK_THROWS_AS(PrimeField(1), DssError);
    CHECK_THROWS_AS(PrimeField(6), DssError);
    CHECK_NOTHROW(PrimeField(2));

    PrimeField f(7);
    try {
        f.inv(0);
        FAIL("expected DivideByZero");
    } catch (const DssError& e) {
        CHECK(e.code() == Err::DivideByZero);
    }
}

TEST_CASE("field axioms hold for randomized triples") {
    for (Sym q : {2ULL, 3ULL, 5ULL, 17ULL, 257ULL, 65521ULL}) {
        PrimeField f(q);
        Rng rng(42 + q);
        for (int t = 0; t < 200; ++t) {
            Sym a = f.random(rng), b = f.random(rng), c = f.random(rng);
            CHECK(f.add(a, f.add(b, c)) == f.add(f.add(a, b), c));
            CHECK(f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            CHECK(f.add(a, f.neg(a)) == 0);
            if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
        }
    }
}

TEST_CASE("inner product matches direct sums") {
    PrimeField f5(5);
    std::vector<Sym> z(4, 0);
    CHECK(inner_product(f5, z, z) == 0);

    std::vector<Sym> a{1, 2}, b{3, 4};
    CHECK(inner_product(f5, a, b) == 1); // 3 + 8 = 11 = 1 mod 5

    std::vector<Sym> bad{1, 2, 3};
    CHECK_THROWS_AS(inner_product(f5, a, bad), DssError);
}

TEST_CASE("inner product is bilinear and symmetric") {
    PrimeField f(17);
    Rng rng(7);
    for (int t = 0; t < 100; ++t) {
        std::vector<Sym> a(5), b(5), c(5);
        for (int i = 0; i < 5; ++i) {
            a[i] = f.random(rng);
            b[i] = f.random(rng);
            c[i] = f.random(rng);
        }
        Sym s = f.random(rng);
        CHECK(inner_product(f, a, b) == inner_product(f, b, a));
        std::vector<Sym> sa(5), a_plus_c(5);
        for (int i = 0; i < 5; ++i) {
            sa[i] = f.mul(s, a[i]);
            a_plus_c[i] = f.add(a[i], c[i]);
        }
        CHECK(inner_product(f, sa, b) == f.mul(s, inner_product(f, a, b)));
        CHECK(inner_product(f, a_plus_c, b) ==
              f.add(inner_product(f, a, b), inner_product(f, c, b)));
    }
}

TEST_CASE("orthogonal complement count by exhaustive enumeration") {
    // for fixed nonzero e over GF(3)^2, exactly q^(v-1) vectors are orthogonal
    PrimeField f3(3);
    for (Sym e0 = 0; e0 < 3; ++e0)
        for (Sym e1 = 0; e1 < 3; ++e1) {
            if (e0 == 0 && e1 == 0) continue;
            std::vector<Sym> e{e0, e1};
            int count = 0;
            for (Sym x0 = 0; x0 < 3; ++x0)
                for (Sym x1 = 0; x1 < 3; ++x1) {
                    std::vector<Sym> x{x0, x1};
                    if (inner_product(f3, x, e) == 0) ++count;
                }
            CHECK(count == 3);
        }
}

TEST_CASE("extension field arithmetic satisfies field axioms") {
    struct Cfg {
        Sym q;
        int v;
    };
    for (Cfg cfg : {Cfg{2, 4}, Cfg{3, 2}, Cfg{5, 3}, Cfg{257, 16}}) {
        ExtField ext(PrimeField(cfg.q), cfg.v);
        Rng rng(cfg.q * 100 + cfg.v);
        for (int t = 0; t < 40; ++t) {
            ExtElem a = ext.random(rng), b = ext.random(rng), c = ext.random(rng);
            CHECK(ext.mul(a, ext.mul(b, c)) == ext.mul(ext.mul(a, b), c));
            CHECK(ext.mul(a, ext.add(b, c)) == ext.add(ext.mul(a, b), ext.mul(a, c)));
            CHECK(ext.add(a, ext.neg(a)) == ext.zero());
            if (!ext.is_zero(a)) {
                CHECK(ext.mul(a, ext.inv(a)) == ext.one());
                CHECK(ext.div(ext.mul(a, b), a) == b);
            }
        }
    }
}

TEST_CASE("extension modulus is monic of the right degree and reproducible") {
    ExtField e1(PrimeField(257), 16);
    ExtField e2(PrimeField(257), 16);
    CHECK(e1.modulus() == e2.modulus());
    CHECK(e1.modulus().size() == 17);
    CHECK(e1.modulus().back() == 1);
}

TEST_CASE("extension scalar action is coordinate-wise") {
    ExtField ext(PrimeField(17), 4);
    Rng rng(3);
    ExtElem a = ext.random(rng);
    Sym s = 11;
    ExtElem lifted = ext.from_base(s);
    CHECK(ext.mul(lifted, a) == ext.scale(s, a));
}

TEST_CASE("field cfg validation") {
    FieldCfg ok;
    CHECK_NOTHROW(ok.validate());
    FieldCfg bad_q{15, 4};
    CHECK_THROWS_AS(bad_q.validate(), DssError);
    FieldCfg bad_v{7, 0};
    CHECK_THROWS_AS(bad_v.validate(), DssError);
}

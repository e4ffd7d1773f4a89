#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "dss/errors.hpp"
#include "dss/rng.hpp"

namespace dss {

using Sym = std::uint64_t; // one base-field symbol, value < q

struct FieldCfg {
    Sym q = 257;  // prime modulus of the base field
    int v = 16;   // extension degree = packet block length

    void validate() const;
};

namespace detail {

inline bool is_prime(Sym q) {
    if (q < 2) return false;
    if (q % 2 == 0) return q == 2;
    for (Sym d = 3; d * d <= q; d += 2)
        if (q % d == 0) return false;
    return true;
}

} // namespace detail

// Arithmetic in F_q, q prime. Elements are plain Sym values < q; the field
// object owns the modulus so matrices and codes can stay field-agnostic.
class PrimeField {
public:
    using Elem = Sym;

    explicit PrimeField(Sym q) : q_(q) {
        require(q >= 2 && detail::is_prime(q), Err::BadParams,
                "field order " + std::to_string(q) + " is not prime");
        require(q < (Sym(1) << 31), Err::BadParams, "field order too large");
    }

    Sym order() const { return q_; }

    Sym zero() const { return 0; }
    Sym one() const { return 1 % q_; }
    bool is_zero(Sym a) const { return a == 0; }

    Sym reduce(std::uint64_t a) const { return a % q_; }
    Sym reduce_signed(std::int64_t a) const {
        std::int64_t r = a % static_cast<std::int64_t>(q_);
        if (r < 0) r += static_cast<std::int64_t>(q_);
        return static_cast<Sym>(r);
    }

    Sym add(Sym a, Sym b) const {
        Sym s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Sym sub(Sym a, Sym b) const { return a >= b ? a - b : a + q_ - b; }
    Sym neg(Sym a) const { return a == 0 ? 0 : q_ - a; }
    Sym mul(Sym a, Sym b) const { return (a * b) % q_; }

    Sym pow(Sym a, std::uint64_t e) const {
        Sym r = one(), base = a % q_;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Sym inv(Sym a) const {
        require(a % q_ != 0, Err::DivideByZero, "inverse of zero");
        // extended Euclid keeps this exact for any prime q
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(q_), new_r = static_cast<std::int64_t>(a % q_);
        while (new_r != 0) {
            std::int64_t quot = r / new_r;
            std::int64_t tmp = t - quot * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - quot * new_r;
            r = new_r;
            new_r = tmp;
        }
        return reduce_signed(t);
    }

    Sym div(Sym a, Sym b) const { return mul(a, inv(b)); }

    Sym random(Rng& rng) const { return rng.below(q_); }

    bool operator==(const PrimeField& other) const { return q_ == other.q_; }

private:
    Sym q_;
};

// Inner product of two coordinate vectors over F_q. This is the hash
// primitive: packets in F_{q^v} hash against each other through their
// coefficient vectors.
inline Sym inner_product(const PrimeField& f, std::span<const Sym> a, std::span<const Sym> b) {
    require(a.size() == b.size(), Err::ShapeError, "inner_product length mismatch");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += f.mul(a[i], b[i]);
        if (acc >= (std::uint64_t(1) << 62)) acc %= f.order();
    }
    return f.reduce(acc);
}

// One element of F_{q^v} in polynomial-basis coordinates (length exactly v).
using ExtElem = std::vector<Sym>;

// F_{q^v} = F_q[x]/(m(x)) with a deterministically chosen irreducible m.
// Base-field scalars act coordinate-wise; full products reduce mod m.
class ExtField {
public:
    using Elem = ExtElem;

    ExtField(PrimeField base, int v) : base_(base), v_(v) {
        require(v >= 1, Err::BadParams, "extension degree must be >= 1");
        modulus_ = find_irreducible();
    }

    const PrimeField& base() const { return base_; }
    int degree() const { return v_; }
    // Monic modulus coefficients, constant term first, length v+1.
    const std::vector<Sym>& modulus() const { return modulus_; }

    Elem zero() const { return Elem(v_, 0); }
    Elem one() const {
        Elem e(v_, 0);
        e[0] = base_.one();
        return e;
    }
    bool is_zero(const Elem& a) const {
        for (Sym c : a)
            if (c != 0) return false;
        return true;
    }

    Elem from_base(Sym a) const {
        Elem e(v_, 0);
        e[0] = a % base_.order();
        return e;
    }

    void check_shape(const Elem& a) const {
        require(static_cast<int>(a.size()) == v_, Err::ShapeError, "element has wrong block length");
    }

    Elem add(const Elem& a, const Elem& b) const {
        check_shape(a);
        check_shape(b);
        Elem r(v_);
        for (int i = 0; i < v_; ++i) r[i] = base_.add(a[i], b[i]);
        return r;
    }
    Elem sub(const Elem& a, const Elem& b) const {
        check_shape(a);
        check_shape(b);
        Elem r(v_);
        for (int i = 0; i < v_; ++i) r[i] = base_.sub(a[i], b[i]);
        return r;
    }
    Elem neg(const Elem& a) const {
        check_shape(a);
        Elem r(v_);
        for (int i = 0; i < v_; ++i) r[i] = base_.neg(a[i]);
        return r;
    }
    Elem scale(Sym s, const Elem& a) const {
        check_shape(a);
        Elem r(v_);
        for (int i = 0; i < v_; ++i) r[i] = base_.mul(s, a[i]);
        return r;
    }

    Elem mul(const Elem& a, const Elem& b) const {
        check_shape(a);
        check_shape(b);
        std::vector<Sym> prod(2 * v_ - 1, 0);
        for (int i = 0; i < v_; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < v_; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(a[i], b[j]));
        }
        reduce_in_place(prod);
        prod.resize(v_);
        return prod;
    }

    Elem inv(const Elem& a) const {
        check_shape(a);
        require(!is_zero(a), Err::DivideByZero, "inverse of zero");
        if (v_ == 1) return Elem{base_.inv(a[0])};
        // extended Euclid in F_q[x] against the modulus
        std::vector<Sym> r0 = modulus_, r1 = trim(a);
        std::vector<Sym> t0, t1{base_.one()};
        while (!r1.empty()) {
            auto [quot, rem] = poly_divmod(r0, r1);
            std::vector<Sym> t2 = poly_sub(t0, poly_mul(quot, t1));
            r0 = std::move(r1);
            r1 = std::move(rem);
            t0 = std::move(t1);
            t1 = std::move(t2);
        }
        // r0 is the gcd; modulus irreducible so it is a nonzero constant
        Sym scale_by = base_.inv(r0.at(0));
        Elem out(v_, 0);
        for (std::size_t i = 0; i < t0.size(); ++i) out[i] = base_.mul(t0[i], scale_by);
        return out;
    }

    Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }

    Elem random(Rng& rng) const {
        Elem e(v_);
        for (int i = 0; i < v_; ++i) e[i] = base_.random(rng);
        return e;
    }

    bool eq(const Elem& a, const Elem& b) const { return a == b; }

private:
    // Polynomials below are coefficient vectors, constant term first, no
    // trailing zeros (the zero polynomial is the empty vector).
    std::vector<Sym> trim(std::vector<Sym> p) const {
        while (!p.empty() && p.back() == 0) p.pop_back();
        return p;
    }

    std::vector<Sym> poly_mul(const std::vector<Sym>& a, const std::vector<Sym>& b) const {
        if (a.empty() || b.empty()) return {};
        std::vector<Sym> r(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j)
                r[i + j] = base_.add(r[i + j], base_.mul(a[i], b[j]));
        }
        return trim(r);
    }

    std::vector<Sym> poly_sub(const std::vector<Sym>& a, const std::vector<Sym>& b) const {
        std::vector<Sym> r(std::max(a.size(), b.size()), 0);
        for (std::size_t i = 0; i < r.size(); ++i) {
            Sym x = i < a.size() ? a[i] : 0;
            Sym y = i < b.size() ? b[i] : 0;
            r[i] = base_.sub(x, y);
        }
        return trim(r);
    }

    std::pair<std::vector<Sym>, std::vector<Sym>> poly_divmod(std::vector<Sym> num,
                                                              const std::vector<Sym>& den) const {
        std::vector<Sym> quot(num.size() > den.size() - 1 ? num.size() - den.size() + 1 : 0, 0);
        Sym lead_inv = base_.inv(den.back());
        while (num.size() >= den.size() && !num.empty()) {
            Sym coef = base_.mul(num.back(), lead_inv);
            std::size_t shift = num.size() - den.size();
            quot[shift] = coef;
            for (std::size_t i = 0; i < den.size(); ++i)
                num[shift + i] = base_.sub(num[shift + i], base_.mul(coef, den[i]));
            num = trim(num);
        }
        return {trim(quot), num};
    }

    void reduce_in_place(std::vector<Sym>& p) const {
        // modulus is monic of degree v
        for (int i = static_cast<int>(p.size()) - 1; i >= v_; --i) {
            Sym coef = p[i];
            if (coef == 0) continue;
            p[i] = 0;
            for (int j = 0; j < v_; ++j)
                p[i - v_ + j] = base_.sub(p[i - v_ + j], base_.mul(coef, modulus_[j]));
        }
        p.resize(std::max<std::size_t>(p.size(), v_));
    }

    std::vector<Sym> poly_mod(const std::vector<Sym>& a, const std::vector<Sym>& m) const {
        return poly_divmod(a, m).second;
    }

    std::vector<Sym> poly_powmod_frobenius(const std::vector<Sym>& m, int steps) const {
        // x^(q^steps) mod m by iterating the q-power map
        std::vector<Sym> cur{0, base_.one()}; // the polynomial x
        for (int s = 0; s < steps; ++s) cur = poly_powmod(cur, base_.order(), m);
        return cur;
    }

    std::vector<Sym> poly_powmod(std::vector<Sym> b, std::uint64_t e, const std::vector<Sym>& m) const {
        std::vector<Sym> r{base_.one()};
        b = poly_mod(b, m);
        while (e) {
            if (e & 1) r = poly_mod(poly_mul(r, b), m);
            b = poly_mod(poly_mul(b, b), m);
            e >>= 1;
        }
        return r;
    }

    std::vector<Sym> poly_gcd(std::vector<Sym> a, std::vector<Sym> b) const {
        while (!b.empty()) {
            auto r = poly_divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a;
    }

    bool is_irreducible(const std::vector<Sym>& m) const {
        // Rabin's test on the monic degree-v candidate m.
        int v = static_cast<int>(m.size()) - 1;
        std::vector<Sym> x{0, base_.one()};
        std::vector<Sym> xq = poly_powmod_frobenius(m, v);
        if (trim(poly_sub(xq, x)) != std::vector<Sym>{}) return false;
        int rem = v;
        for (int p = 2; p <= rem; ++p) {
            if (rem % p != 0) continue;
            while (rem % p == 0) rem /= p;
            std::vector<Sym> xp = poly_powmod_frobenius(m, v / p);
            auto g = poly_gcd(m, poly_sub(xp, x));
            if (!(g.size() == 1)) return false;
        }
        return true;
    }

    std::vector<Sym> find_irreducible() const {
        const Sym q = base_.order();
        if (v_ == 1) return {base_.neg(base_.one()), base_.one()}; // x - 1, any monic linear works
        // binomials x^v - a first; they exist for most odd q
        for (Sym a = 1; a < q; ++a) {
            std::vector<Sym> m(v_ + 1, 0);
            m[0] = base_.neg(a);
            m[v_] = base_.one();
            if (is_irreducible(m)) return m;
        }
        // deterministic seeded search for the general case (e.g. q = 2)
        Rng rng(0x5eedULL ^ (q << 8) ^ static_cast<std::uint64_t>(v_));
        for (int tries = 0; tries < 4096; ++tries) {
            std::vector<Sym> m(v_ + 1, 0);
            m[v_] = base_.one();
            for (int i = 0; i < v_; ++i) m[i] = base_.random(rng);
            if (is_irreducible(m)) return m;
        }
        fail(Err::BadParams, "no irreducible modulus found");
    }

    PrimeField base_;
    int v_;
    std::vector<Sym> modulus_;
};

inline void FieldCfg::validate() const {
    require(detail::is_prime(q), Err::BadParams, "q must be prime");
    require(v >= 1, Err::BadParams, "v must be >= 1");
}

} // namespace dss

#pragma once

#include <algorithm>
#include <tuple>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"

namespace drinfeld {

/// Dense polynomial over a coefficient field modeled by domain D
/// (Field, ExtField, ...). Little-endian, no trailing zeros; the zero
/// polynomial is the empty sequence and its degree is a distinguished
/// "no value", never -1.
template <class D>
struct DPoly {
    std::vector<typename D::Elem> c;

    bool is_zero() const { return c.empty(); }
    std::optional<std::size_t> degree() const {
        if (c.empty()) return std::nullopt;
        return c.size() - 1;
    }
    friend bool operator==(const DPoly& a, const DPoly& b) = default;
};

template <class D>
void poly_trim(const D& dom, DPoly<D>& a) {
    while (!a.c.empty() && dom.is_zero(a.c.back())) a.c.pop_back();
}

template <class D>
DPoly<D> poly_from(const D& dom, std::vector<typename D::Elem> coeffs) {
    DPoly<D> r{std::move(coeffs)};
    poly_trim(dom, r);
    return r;
}

template <class D>
DPoly<D> poly_one(const D& dom) {
    return {{dom.one()}};
}

template <class D>
DPoly<D> poly_monomial(const D& dom, typename D::Elem coeff, std::size_t k) {
    if (dom.is_zero(coeff)) return {};
    DPoly<D> r;
    r.c.assign(k + 1, dom.zero());
    r.c[k] = coeff;
    return r;
}

template <class D>
typename D::Elem poly_coeff(const D& dom, const DPoly<D>& a, std::size_t k) {
    return k < a.c.size() ? a.c[k] : dom.zero();
}

template <class D>
DPoly<D> poly_add(const D& dom, const DPoly<D>& a, const DPoly<D>& b) {
    DPoly<D> r;
    r.c.resize(std::max(a.c.size(), b.c.size()), dom.zero());
    for (std::size_t i = 0; i < r.c.size(); ++i)
        r.c[i] = dom.add(poly_coeff(dom, a, i), poly_coeff(dom, b, i));
    poly_trim(dom, r);
    return r;
}

template <class D>
DPoly<D> poly_neg(const D& dom, const DPoly<D>& a) {
    DPoly<D> r = a;
    for (auto& x : r.c) x = dom.neg(x);
    return r;
}

template <class D>
DPoly<D> poly_sub(const D& dom, const DPoly<D>& a, const DPoly<D>& b) {
    return poly_add(dom, a, poly_neg(dom, b));
}

template <class D>
DPoly<D> poly_mul(const D& dom, const DPoly<D>& a, const DPoly<D>& b) {
    if (a.is_zero() || b.is_zero()) return {};
    DPoly<D> r;
    r.c.assign(a.c.size() + b.c.size() - 1, dom.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (dom.is_zero(a.c[i])) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = dom.add(r.c[i + j], dom.mul(a.c[i], b.c[j]));
    }
    poly_trim(dom, r);
    return r;
}

template <class D>
DPoly<D> poly_scale(const D& dom, typename D::Elem s, const DPoly<D>& a) {
    if (dom.is_zero(s)) return {};
    DPoly<D> r = a;
    for (auto& x : r.c) x = dom.mul(s, x);
    poly_trim(dom, r);
    return r;
}

/// f = g*quotient + remainder with deg remainder < deg g.
template <class D>
std::pair<DPoly<D>, DPoly<D>> poly_divrem(const D& dom, const DPoly<D>& f, const DPoly<D>& g) {
    if (g.is_zero())
        raise_domain("DivisionByZeroPolynomial", "division by the zero polynomial");
    if (f.c.size() < g.c.size()) return {{}, f};
    DPoly<D> q, r = f;
    q.c.assign(f.c.size() - g.c.size() + 1, dom.zero());
    auto lead_inv = dom.inv(g.c.back());
    while (r.c.size() >= g.c.size()) {
        auto s = dom.mul(r.c.back(), lead_inv);
        std::size_t k = r.c.size() - g.c.size();
        q.c[k] = s;
        for (std::size_t i = 0; i < g.c.size(); ++i)
            r.c[i + k] = dom.sub(r.c[i + k], dom.mul(s, g.c[i]));
        poly_trim(dom, r);
        if (r.c.empty()) break;
    }
    poly_trim(dom, q);
    return {std::move(q), std::move(r)};
}

template <class D>
DPoly<D> poly_mod(const D& dom, const DPoly<D>& f, const DPoly<D>& g) {
    return poly_divrem(dom, f, g).second;
}

template <class D>
bool poly_divides(const D& dom, const DPoly<D>& g, const DPoly<D>& f) {
    return poly_mod(dom, f, g).is_zero();
}

/// Monic gcd; gcd(0, 0) = 0.
template <class D>
DPoly<D> poly_gcd(const D& dom, DPoly<D> a, DPoly<D> b) {
    while (!b.is_zero()) {
        DPoly<D> r = poly_mod(dom, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = poly_scale(dom, dom.inv(a.c.back()), a);
    return a;
}

/// Returns (g, s, t) with g = gcd monic and s*a + t*b = g.
template <class D>
std::tuple<DPoly<D>, DPoly<D>, DPoly<D>> poly_xgcd(const D& dom, DPoly<D> a, DPoly<D> b) {
    DPoly<D> s0 = poly_one(dom), s1{}, t0{}, t1 = poly_one(dom);
    while (!b.is_zero()) {
        auto [q, r] = poly_divrem(dom, a, b);
        a = std::move(b);
        b = std::move(r);
        DPoly<D> s2 = poly_sub(dom, s0, poly_mul(dom, q, s1));
        DPoly<D> t2 = poly_sub(dom, t0, poly_mul(dom, q, t1));
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (!a.is_zero()) {
        auto lam = dom.inv(a.c.back());
        a = poly_scale(dom, lam, a);
        s0 = poly_scale(dom, lam, s0);
        t0 = poly_scale(dom, lam, t0);
    }
    return {std::move(a), std::move(s0), std::move(t0)};
}

template <class D>
typename D::Elem poly_eval(const D& dom, const DPoly<D>& f, typename D::Elem x) {
    auto r = dom.zero();
    for (std::size_t i = f.c.size(); i-- > 0;) r = dom.add(dom.mul(r, x), f.c[i]);
    return r;
}

template <class D>
DPoly<D> poly_pow_mod(const D& dom, DPoly<D> base, std::uint64_t e, const DPoly<D>& m) {
    DPoly<D> r = poly_one(dom);
    base = poly_mod(dom, base, m);
    while (e) {
        if (e & 1) r = poly_mod(dom, poly_mul(dom, r, base), m);
        base = poly_mod(dom, poly_mul(dom, base, base), m);
        e >>= 1;
    }
    return r;
}

/// Multiplicity of g in f; f must be nonzero, g nonconstant.
template <class D>
std::size_t poly_valuation(const D& dom, DPoly<D> f, const DPoly<D>& g) {
    if (f.is_zero()) raise_domain("ZeroElement", "valuation of the zero polynomial");
    std::size_t v = 0;
    for (;;) {
        auto [q, r] = poly_divrem(dom, f, g);
        if (!r.is_zero()) return v;
        f = std::move(q);
        ++v;
    }
}

/// Irreducibility over a field with Q elements: m has no factor of degree
/// <= deg(m)/2 iff gcd(x^{Q^i} - x, m) = 1 for i = 1..deg(m)/2.
template <class D>
bool poly_irreducible(const D& dom, const DPoly<D>& m, std::uint64_t Q) {
    if (m.is_zero() || m.c.size() < 2) return false;
    const std::size_t deg = m.c.size() - 1;
    if (deg == 1) return true;
    DPoly<D> x = poly_monomial(dom, dom.one(), 1);
    DPoly<D> xi = x;
    for (std::size_t i = 1; i <= deg / 2; ++i) {
        xi = poly_pow_mod(dom, xi, Q, m);
        if (poly_gcd(dom, poly_sub(dom, xi, x), m).c.size() > 1) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// A = F_q[T]
// ---------------------------------------------------------------------------

using APoly = DPoly<Field>;

/// Nonzero prime of A: a monic irreducible generator and its degree.
struct PrimeIdeal {
    APoly generator;
    std::size_t degree = 0;

    friend bool operator==(const PrimeIdeal& a, const PrimeIdeal& b) = default;
};

inline PrimeIdeal make_prime(const Field& f, APoly gen) {
    if (gen.is_zero() || gen.c.size() < 2 || gen.c.back() != f.one())
        raise_domain("ReducibleModulus", "prime generator must be monic and non-constant");
    if (!poly_irreducible(f, gen, f.q()))
        raise_domain("ReducibleModulus", "prime generator is reducible");
    std::size_t d = gen.c.size() - 1;
    return {std::move(gen), d};
}

/// The linear prime (T - alpha).
inline PrimeIdeal linear_prime(const Field& f, FqElem alpha) {
    return {poly_from(f, {f.neg(alpha), f.one()}), 1};
}

/// Lexicographic successor of a coefficient tuple (a_0 most significant);
/// returns false once the tuple wraps around to all zeros.
inline bool next_tuple(const Field& f, std::vector<FqElem>& digits) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (++digits[i].v < f.q()) return true;
        digits[i].v = 0;
        if (i == 0) return false;
    }
    return false;
}

/// All monic irreducibles of degree exactly d, in enumeration order.
inline std::vector<PrimeIdeal> list_primes(const Field& f, std::size_t d) {
    if (d == 0) raise_domain("UnsupportedDegree", "prime degree must be >= 1");
    std::vector<PrimeIdeal> out;
    std::vector<FqElem> digits(d, f.zero());
    do {
        APoly cand;
        cand.c = digits;
        cand.c.push_back(f.one());
        if (poly_irreducible(f, cand, f.q())) out.push_back({cand, d});
    } while (next_tuple(f, digits));
    return out;
}

/// Polynomial of degree < width with coefficient tuple of rank `idx` in
/// enumeration order (a_0 the most significant digit).
inline APoly poly_from_index(const Field& f, std::size_t width, std::uint64_t idx) {
    APoly r;
    r.c.assign(width, f.zero());
    for (std::size_t i = width; i-- > 0;) {
        r.c[i] = {idx % f.q()};
        idx /= f.q();
    }
    poly_trim(f, r);
    return r;
}

/// a(T) -> a(T)^q. Over F_q the coefficients are Frobenius-fixed, so the
/// q-th power just spreads coefficient i to position i*q.
inline APoly poly_q_power(const Field& f, const APoly& a) {
    if (a.is_zero()) return {};
    APoly r;
    r.c.assign((a.c.size() - 1) * f.q() + 1, f.zero());
    for (std::size_t i = 0; i < a.c.size(); ++i) r.c[i * f.q()] = a.c[i];
    return r;
}

}  // namespace drinfeld

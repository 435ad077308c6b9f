#pragma once

#include <concepts>
#include <cstdint>
#include <utility>
#include <vector>

#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"

namespace drinfeld {

/// A coefficient domain for twisted polynomials: an F_q-algebra carrying the
/// q-power endomorphism. Field, ExtField and ADomain all model this.
template <class D>
concept TwistedCoefficientDomain = requires(const D& d, const typename D::Elem& a,
                                            const typename D::Elem& b, FqElem s) {
    { d.zero() } -> std::convertible_to<typename D::Elem>;
    { d.one() } -> std::convertible_to<typename D::Elem>;
    { d.is_zero(a) } -> std::convertible_to<bool>;
    { d.eq(a, b) } -> std::convertible_to<bool>;
    { d.add(a, b) } -> std::convertible_to<typename D::Elem>;
    { d.neg(a) } -> std::convertible_to<typename D::Elem>;
    { d.mul(a, b) } -> std::convertible_to<typename D::Elem>;
    { d.q_power(a) } -> std::convertible_to<typename D::Elem>;
    { d.from_scalar(s) } -> std::convertible_to<typename D::Elem>;
    { d.same_as(d) } -> std::convertible_to<bool>;
};

/// A = F_q[T] viewed as a coefficient domain, with a(T) -> a(T)^q as the
/// q-power endomorphism.
class ADomain {
  public:
    using Elem = APoly;

    explicit ADomain(const Field& f) : f_(&f) {}

    const Field& field() const { return *f_; }
    bool same_as(const ADomain& o) const { return f_->same_as(*o.f_); }

    Elem zero() const { return {}; }
    Elem one() const { return poly_one(*f_); }
    bool is_zero(const Elem& a) const { return a.is_zero(); }
    bool eq(const Elem& a, const Elem& b) const { return a == b; }
    Elem add(const Elem& a, const Elem& b) const { return poly_add(*f_, a, b); }
    Elem sub(const Elem& a, const Elem& b) const { return poly_sub(*f_, a, b); }
    Elem neg(const Elem& a) const { return poly_neg(*f_, a); }
    Elem mul(const Elem& a, const Elem& b) const { return poly_mul(*f_, a, b); }
    Elem from_scalar(FqElem c) const { return poly_from(*f_, {c}); }
    Elem q_power(const Elem& a) const { return poly_q_power(*f_, a); }

  private:
    const Field* f_;
};

/// Twisted polynomial sum a_i tau^i over a coefficient domain D, where tau
/// acts as the q-power map: (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}.
/// Canonical form: highest stored coefficient nonzero; zero is empty.
template <TwistedCoefficientDomain D>
struct TwistedPoly {
    const D* dom = nullptr;
    std::vector<typename D::Elem> c;  // little-endian in tau

    bool is_zero() const { return c.empty(); }
};

namespace detail {
template <class D>
void check_same_domain(const TwistedPoly<D>& f, const TwistedPoly<D>& g) {
    if (f.dom && g.dom && !f.dom->same_as(*g.dom))
        raise_domain("DomainMismatch", "twisted polynomials over different domains");
}
}  // namespace detail

template <class D>
TwistedPoly<D> tw_from(const D& dom, std::vector<typename D::Elem> coeffs) {
    TwistedPoly<D> r{&dom, std::move(coeffs)};
    while (!r.c.empty() && dom.is_zero(r.c.back())) r.c.pop_back();
    return r;
}

template <class D>
TwistedPoly<D> tw_monomial(const D& dom, typename D::Elem coeff, std::size_t k) {
    std::vector<typename D::Elem> v(k + 1, dom.zero());
    v[k] = std::move(coeff);
    return tw_from(dom, std::move(v));
}

template <class D>
typename D::Elem tw_coeff(const D& dom, const TwistedPoly<D>& f, std::size_t k) {
    return k < f.c.size() ? f.c[k] : dom.zero();
}

template <class D>
TwistedPoly<D> tw_add(const TwistedPoly<D>& f, const TwistedPoly<D>& g) {
    detail::check_same_domain(f, g);
    const D& dom = *(f.dom ? f.dom : g.dom);
    std::vector<typename D::Elem> v(std::max(f.c.size(), g.c.size()), dom.zero());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = dom.add(tw_coeff(dom, f, i), tw_coeff(dom, g, i));
    return tw_from(dom, std::move(v));
}

template <class D>
TwistedPoly<D> tw_neg(const TwistedPoly<D>& f) {
    if (!f.dom) return f;
    auto v = f.c;
    for (auto& x : v) x = f.dom->neg(x);
    return tw_from(*f.dom, std::move(v));
}

template <class D>
TwistedPoly<D> tw_sub(const TwistedPoly<D>& f, const TwistedPoly<D>& g) {
    return tw_add(f, tw_neg(g));
}

/// Coefficient-wise left multiplication by a domain element (= product with
/// the degree-0 twisted polynomial s).
template <class D>
TwistedPoly<D> tw_scale(const D& dom, const typename D::Elem& s, const TwistedPoly<D>& f) {
    std::vector<typename D::Elem> v = f.c;
    for (auto& x : v) x = dom.mul(s, x);
    return tw_from(dom, std::move(v));
}

/// Product in K{tau}: coefficient of tau^k is sum over i+j=k of
/// f_i * (g_j)^{q^i}. The q-powered copies of g's coefficients are built
/// incrementally as i grows.
template <class D>
TwistedPoly<D> tw_mul(const TwistedPoly<D>& f, const TwistedPoly<D>& g) {
    detail::check_same_domain(f, g);
    if (f.is_zero() || g.is_zero()) return f.is_zero() ? f : g;
    const D& dom = *f.dom;
    std::vector<typename D::Elem> out(f.c.size() + g.c.size() - 1, dom.zero());
    std::vector<typename D::Elem> gq = g.c;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i > 0)
            for (auto& x : gq) x = dom.q_power(x);
        if (dom.is_zero(f.c[i])) continue;
        for (std::size_t j = 0; j < gq.size(); ++j)
            out[i + j] = dom.add(out[i + j], dom.mul(f.c[i], gq[j]));
    }
    return tw_from(dom, std::move(out));
}

/// The derivative map: the tau^0 coefficient. Multiplicative across tw_mul.
template <class D>
typename D::Elem derivative(const D& dom, const TwistedPoly<D>& f) {
    return tw_coeff(dom, f, 0);
}

/// (ht_tau, deg_tau): indices of the lowest/highest nonzero coefficient.
/// ht_tau = 0 exactly when f(x) is separable.
template <class D>
std::pair<std::size_t, std::size_t> ht_deg(const D& dom, const TwistedPoly<D>& f) {
    if (f.is_zero()) raise_domain("ZeroElement", "ht/deg of the zero twisted polynomial");
    std::size_t h = 0;
    while (dom.is_zero(f.c[h])) ++h;
    return {h, f.c.size() - 1};
}

/// Evaluation f(x) = sum a_i x^{q^i} in an F_q-algebra R; `embed` carries the
/// coefficients into R and must raise EmbeddingUndefined if it cannot.
template <class D, class R, class Embed>
typename R::Elem tw_eval(const D& dom, const TwistedPoly<D>& f, const R& target,
                         const typename R::Elem& x, Embed&& embed) {
    auto acc = target.zero();
    auto xqi = x;
    for (std::size_t i = 0; i < f.c.size(); ++i) {
        if (i > 0) xqi = target.q_power(xqi);
        if (dom.is_zero(f.c[i])) continue;
        acc = target.add(acc, target.mul(embed(f.c[i]), xqi));
    }
    return acc;
}

/// Evaluation when coefficients already live in the target algebra.
template <class D>
typename D::Elem tw_eval(const D& dom, const TwistedPoly<D>& f, const typename D::Elem& x) {
    return tw_eval(dom, f, dom, x, [](const typename D::Elem& a) { return a; });
}

}  // namespace drinfeld

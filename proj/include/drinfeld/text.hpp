#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/drinfeld.hpp"
#include "drinfeld/errors.hpp"
#include "drinfeld/field.hpp"
#include "drinfeld/poly.hpp"
#include "drinfeld/twisted.hpp"

namespace drinfeld {

/// Canonical element text: a plain integer when n = 1, otherwise the
/// little-endian coordinate tuple "(c0,c1,...)".
inline std::string element_to_string(const Field& f, FqElem x) {
    auto coords = f.coords_of(x);
    if (f.n() == 1) return std::to_string(coords[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < coords.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(coords[i]);
    }
    return s + ")";
}

/// Canonical polynomial text: descending powers, no zero terms, "0" for the
/// zero polynomial; unit coefficients of positive-degree terms are omitted.
inline std::string poly_to_string(const Field& f, const APoly& a) {
    if (a.is_zero()) return "0";
    std::string s;
    for (std::size_t i = a.c.size(); i-- > 0;) {
        if (f.is_zero(a.c[i])) continue;
        if (!s.empty()) s += '+';
        bool unit = a.c[i] == f.one();
        if (i == 0 || !unit) s += element_to_string(f, a.c[i]);
        if (i > 0) {
            if (!unit) s += '*';
            s += 'T';
            if (i > 1) s += '^' + std::to_string(i);
        }
    }
    return s;
}

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
    bool peek_is(char c) {
        skip_ws();
        return i < s.size() && s[i] == c;
    }
    bool consume(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    std::uint64_t number() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw UsageError("ParseError", "expected a number at position " + std::to_string(i) +
                                               " in '" + s + "'");
        std::uint64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
            v = v * 10 + (s[i++] - '0');
        return v;
    }
};

inline FqElem parse_element_at(const Field& f, Cursor& c) {
    if (c.consume('(')) {
        std::vector<std::uint64_t> coords;
        if (!c.consume(')')) {
            do {
                coords.push_back(c.number());
            } while (c.consume(','));
            if (!c.consume(')'))
                throw UsageError("ParseError", "unterminated coordinate tuple in '" + c.s + "'");
        }
        if (coords.size() > f.n())
            throw UsageError("ParseError", "coordinate tuple longer than the field degree");
        coords.resize(f.n(), 0);
        return f.from_coords(coords);
    }
    return f.from_int(c.number());
}

}  // namespace detail

inline FqElem parse_element(const Field& f, const std::string& text) {
    detail::Cursor c{text};
    FqElem e = detail::parse_element_at(f, c);
    if (!c.at_end()) throw UsageError("ParseError", "trailing input in element '" + text + "'");
    return e;
}

/// Whitespace-insensitive parse of the polynomial format; repeated powers
/// accumulate. Accepts "c", "c*T^k", "T", "T^k" terms joined by '+'.
inline APoly parse_poly(const Field& f, const std::string& text) {
    detail::Cursor c{text};
    APoly acc;
    bool first = true;
    while (!c.at_end()) {
        if (!first && !c.consume('+'))
            throw UsageError("ParseError", "expected '+' between terms in '" + text + "'");
        first = false;
        FqElem coeff = f.one();
        bool saw_coeff = false;
        if (!c.peek_is('T')) {
            coeff = detail::parse_element_at(f, c);
            saw_coeff = true;
        }
        std::size_t k = 0;
        c.skip_ws();
        bool star = c.consume('*');
        if (star || c.peek_is('T')) {
            if (!c.consume('T'))
                throw UsageError("ParseError", "expected 'T' after '*' in '" + text + "'");
            k = 1;
            if (c.consume('^')) k = static_cast<std::size_t>(c.number());
        } else if (!saw_coeff) {
            throw UsageError("ParseError", "empty term in '" + text + "'");
        }
        acc = poly_add(f, acc, poly_monomial(f, coeff, k));
    }
    return acc;
}

/// Datum text "g1=<poly>;g2=<poly>".
inline std::string datum_to_string(const Datum& w) {
    return "g1=" + poly_to_string(*w.field, w.g1) + ";g2=" + poly_to_string(*w.field, w.g2);
}

inline Datum parse_datum(const Field& f, const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw UsageError("ParseError", "datum must be 'g1=<poly>;g2=<poly>'");
    auto piece = [&](const std::string& part, const std::string& key) {
        auto eq = part.find('=');
        std::size_t start = 0;
        while (start < part.size() && std::isspace(static_cast<unsigned char>(part[start])))
            ++start;
        if (eq == std::string::npos || part.compare(start, key.size(), key) != 0)
            throw UsageError("ParseError", "datum must be 'g1=<poly>;g2=<poly>'");
        return parse_poly(f, part.substr(eq + 1));
    };
    APoly g1 = piece(text.substr(0, semi), "g1");
    APoly g2 = piece(text.substr(semi + 1), "g2");
    return make_datum(f, std::move(g1), std::move(g2));
}

/// Twisted polynomial emission, ascending tau-powers ("t" stands for tau);
/// multi-term coefficients are parenthesized.
inline std::string tw_to_string(const Field& f, const TwistedPoly<Field>& w) {
    if (w.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < w.c.size(); ++i) {
        if (f.is_zero(w.c[i])) continue;
        if (!s.empty()) s += '+';
        s += element_to_string(f, w.c[i]);
        if (i >= 1) s += "*t";
        if (i > 1) s += '^' + std::to_string(i);
    }
    return s;
}

inline std::string tw_to_string(const ADomain& dom, const TwistedPoly<ADomain>& w) {
    const Field& f = dom.field();
    if (w.is_zero()) return "0";
    std::string s;
    for (std::size_t i = 0; i < w.c.size(); ++i) {
        if (dom.is_zero(w.c[i])) continue;
        if (!s.empty()) s += '+';
        std::string cs = poly_to_string(f, w.c[i]);
        bool multi = cs.find('+') != std::string::npos;
        s += multi ? "(" + cs + ")" : cs;
        if (i >= 1) s += "*t";
        if (i > 1) s += '^' + std::to_string(i);
    }
    return s;
}

}  // namespace drinfeld

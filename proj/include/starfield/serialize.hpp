#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "starfield/element.hpp"

namespace starfield {

// Canonical text form:  coeff * hbar^p * u^2*v + ...
// Terms in graded-lex monomial order, hbar powers ascending within a
// monomial; exact rationals as num/den; complex scalars as (re+imi).
// parse(print(e)) == e.

template <class S>
std::string print_element(const AlgebraElement<S>& e) {
    using Traits = ScalarTraits<S>;
    if (e.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, h] : e.terms()) {
        std::string mono;
        for (std::size_t i = 0; i < m.n_modes(); ++i) {
            std::uint32_t ex = m.exponent(i);
            if (ex == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += e.space()->label(i);
            if (ex > 1) mono += "^" + std::to_string(ex);
        }
        for (const auto& [p, c] : h.coeffs()) {
            if (!first) out += " + ";
            first = false;
            out += Traits::to_text(c);
            if (p >= 1) {
                out += " * hbar";
                if (p > 1) out += "^" + std::to_string(p);
            }
            if (!mono.empty()) out += " * " + mono;
        }
    }
    return out;
}

namespace detail {

struct Cursor {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= src.size();
    }
    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!accept(c)) throw ParseError(pos, std::string("expected ") + what);
    }

    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        auto head = [](char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; };
        auto tail = [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; };
        if (pos >= src.size() || !head(src[pos])) throw ParseError(pos, "expected identifier");
        ++pos;
        while (pos < src.size() && tail(src[pos])) ++pos;
        return std::string(src.substr(start, pos - start));
    }

    std::string digits() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) throw ParseError(pos, "expected digits");
        return std::string(src.substr(start, pos - start));
    }

    std::uint32_t uint_value() {
        return static_cast<std::uint32_t>(std::stoul(digits()));
    }
};

inline BigRational parse_rational(Cursor& c) {
    bool neg = c.accept('-');
    std::string num = c.digits();
    BigRational r;
    if (c.pos < c.src.size() && c.src[c.pos] == '/') {
        ++c.pos;
        std::string den = c.digits();
        if (BigRational(boost::multiprecision::cpp_int(den)) == 0)
            throw ParseError(c.pos, "zero denominator");
        r = BigRational(boost::multiprecision::cpp_int(num),
                        boost::multiprecision::cpp_int(den));
    } else {
        r = BigRational(boost::multiprecision::cpp_int(num));
    }
    return neg ? BigRational(-r) : r;
}

inline double parse_double(Cursor& c) {
    c.skip_ws();
    const char* first = c.src.data() + c.pos;
    const char* last = c.src.data() + c.src.size();
    const char* end = first;
    double v = double_from_text(first, last, &end);
    c.pos += static_cast<std::size_t>(end - first);
    return v;
}

template <class S>
S parse_number(Cursor& c) {
    if constexpr (ScalarTraits<S>::exact)
        return S(parse_rational(c));
    else
        return S(parse_double(c), 0.0);
}

// scalar := '(' number sign number 'i' ')' | number ['i']
template <class S>
S parse_scalar(Cursor& c) {
    using Traits = ScalarTraits<S>;
    if (c.accept('(')) {
        bool reneg = c.accept('-');
        S re = parse_number<S>(c);
        if (reneg) re = -re;
        bool imneg;
        if (c.accept('+'))
            imneg = false;
        else if (c.accept('-'))
            imneg = true;
        else
            throw ParseError(c.pos, "expected + or - in complex literal");
        S im = parse_number<S>(c);
        if (imneg) im = -im;
        c.expect('i', "'i'");
        c.expect(')', "')'");
        if constexpr (Traits::exact)
            return S(re.re, im.re);
        else
            return S(re.real(), im.real());
    }
    S v = parse_number<S>(c);
    if (c.pos < c.src.size() && c.src[c.pos] == 'i') {
        ++c.pos;
        if constexpr (Traits::exact)
            return S(BigRational(0), v.re);
        else
            return S(0.0, v.real());
    }
    return v;
}

inline bool starts_scalar(char ch) {
    return std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '(' || ch == '.';
}

// term := factor ('*' factor)*, factor := scalar | hbar['^'n] | label['^'n]
template <class S>
void parse_term(Cursor& c, const ModeSpacePtr& space, AlgebraElement<S>& out, bool negate) {
    using Traits = ScalarTraits<S>;
    S coeff = negate ? -Traits::one() : Traits::one();
    std::uint32_t hpow = 0;
    Monomial mono = Monomial::unit(space->size());

    do {
        c.skip_ws();
        char ch = c.peek();
        if (starts_scalar(ch)) {
            coeff = coeff * parse_scalar<S>(c);
        } else {
            std::size_t at = c.pos;
            std::string name = c.ident();
            std::uint32_t ex = 1;
            if (c.accept('^')) ex = c.uint_value();
            if (name == "hbar") {
                hpow += ex;
            } else {
                if (!space->contains(name))
                    throw ParseError(at, "unknown mode label '" + name + "'");
                std::vector<std::uint32_t> exps(space->size(), 0);
                exps[space->index_of(name)] = ex;
                mono = mono.times(Monomial(std::move(exps)));
            }
        }
    } while (c.accept('*'));

    out.add_term(mono, HPoly<S>::hbar_power(hpow, coeff));
}

}  // namespace detail

template <class S>
AlgebraElement<S> parse_element(std::string_view text, const ModeSpacePtr& space) {
    detail::Cursor c{text};
    AlgebraElement<S> out(space);
    if (c.done()) throw ParseError(0, "empty element text");

    bool neg = c.accept('-');
    detail::parse_term(c, space, out, neg);
    while (!c.done()) {
        if (c.accept('+'))
            detail::parse_term(c, space, out, false);
        else if (c.accept('-'))
            detail::parse_term(c, space, out, true);
        else
            throw ParseError(c.pos, "expected '+' or '-' between terms");
    }
    return out;
}

/// Scalar text round-trip helpers (shared with the pairing-file format).
template <class S>
std::string print_scalar(const S& s) {
    return ScalarTraits<S>::to_text(s);
}

template <class S>
S parse_scalar_text(std::string_view text) {
    detail::Cursor c{text};
    bool neg = c.accept('-');
    S v = detail::parse_scalar<S>(c);
    if (!c.done()) throw ParseError(c.pos, "trailing characters after scalar");
    return neg ? S(-v) : v;
}

}  // namespace starfield

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>

#include "starfield/hpoly.hpp"
#include "starfield/mode_space.hpp"

namespace starfield {

/// Element of the graded free commutative algebra over a ModeSpace, with
/// hbar-polynomial coefficients.  Sparse and canonical: no zero coefficient
/// polynomials are stored and terms sit in graded-lex order, so equal
/// elements have bit-identical storage on the exact backend.
template <class S>
class AlgebraElement {
public:
    using Traits = ScalarTraits<S>;
    using TermMap = std::map<Monomial, HPoly<S>, MonomialGradedLess>;

    explicit AlgebraElement(ModeSpacePtr space) : space_(std::move(space)) {
        if (!space_) throw DomainError("null mode space");
    }

    static AlgebraElement zero(ModeSpacePtr space) { return AlgebraElement(std::move(space)); }
    static AlgebraElement unit(ModeSpacePtr space) {
        return constant(std::move(space), Traits::one());
    }
    static AlgebraElement constant(ModeSpacePtr space, S c) {
        AlgebraElement e(std::move(space));
        e.add_term(Monomial::unit(e.space_->size()), HPoly<S>::constant(std::move(c)));
        return e;
    }
    static AlgebraElement hbar(ModeSpacePtr space, std::uint32_t p = 1) {
        AlgebraElement e(std::move(space));
        e.add_term(Monomial::unit(e.space_->size()), HPoly<S>::hbar_power(p));
        return e;
    }
    static AlgebraElement generator(ModeSpacePtr space, std::size_t mode) {
        AlgebraElement e(std::move(space));
        if (mode >= e.space_->size()) throw DomainError("mode index out of range");
        e.add_term(Monomial::generator(e.space_->size(), mode),
                   HPoly<S>::constant(Traits::one()));
        return e;
    }
    static AlgebraElement generator(ModeSpacePtr space, const std::string& label) {
        std::size_t idx = space->index_of(label);
        return generator(std::move(space), idx);
    }

    const ModeSpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Maximum total monomial degree (0 for the zero element).
    std::uint32_t degree() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.degree();
    }
    std::uint32_t hbar_degree() const {
        std::uint32_t d = 0;
        for (const auto& [m, h] : terms_) d = std::max(d, h.degree());
        return d;
    }

    HPoly<S> coefficient(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? HPoly<S>{} : it->second;
    }

    void add_term(const Monomial& m, const HPoly<S>& h) {
        if (m.n_modes() != space_->size()) throw DimensionError("monomial/space size mismatch");
        if (h.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, h);
        if (!inserted) {
            it->second += h;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    AlgebraElement& operator+=(const AlgebraElement& o) {
        require_same_space(space_, o.space_);
        for (const auto& [m, h] : o.terms_) add_term(m, h);
        return *this;
    }
    AlgebraElement& operator-=(const AlgebraElement& o) {
        require_same_space(space_, o.space_);
        for (const auto& [m, h] : o.terms_) add_term(m, -h);
        return *this;
    }
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator-(const AlgebraElement& a) {
        AlgebraElement r(a.space_);
        for (const auto& [m, h] : a.terms_) r.terms_.emplace(m, -h);
        return r;
    }

    AlgebraElement scaled(const S& s) const {
        AlgebraElement r(space_);
        for (const auto& [m, h] : terms_) r.add_term(m, h.scaled(s));
        return r;
    }
    AlgebraElement scaled(const HPoly<S>& h) const {
        AlgebraElement r(space_);
        for (const auto& [m, c] : terms_) r.add_term(m, c * h);
        return r;
    }

    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
        return *a.space_ == *b.space_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const AlgebraElement& a, const AlgebraElement& b) {
        return !(a == b);
    }

private:
    ModeSpacePtr space_;
    TermMap terms_;
};

/// The commutative symmetric product.  No symmetrization factors: u ⊙ u is
/// the monomial u^2 with coefficient 1.
template <class S>
AlgebraElement<S> sym_mul(const AlgebraElement<S>& a, const AlgebraElement<S>& b) {
    require_same_space(a.space(), b.space());
    AlgebraElement<S> r(a.space());
    for (const auto& [ma, ha] : a.terms())
        for (const auto& [mb, hb] : b.terms()) r.add_term(ma.times(mb), ha * hb);
    return r;
}

/// Coordinate contraction with respect to one mode: the derivation sending
/// exponent e on `mode` to e * (exponent e-1).  Annihilates degree 0.
template <class S>
AlgebraElement<S> contract(std::size_t mode, const AlgebraElement<S>& a) {
    if (mode >= a.space()->size()) throw DomainError("mode index out of range");
    AlgebraElement<S> r(a.space());
    for (const auto& [m, h] : a.terms()) {
        std::uint32_t e = m.exponent(mode);
        if (e == 0) continue;
        r.add_term(m.lowered(mode), h.scaled(ScalarTraits<S>::from_int(e)));
    }
    return r;
}

/// The projection pi: set hbar = 0.
template <class S>
AlgebraElement<S> project_pi(const AlgebraElement<S>& a) {
    AlgebraElement<S> r(a.space());
    for (const auto& [m, h] : a.terms()) r.add_term(m, h.truncate_to_constant());
    return r;
}

/// The hbar^p coefficient of an element, as an hbar-free element.
template <class S>
AlgebraElement<S> hbar_coefficient(const AlgebraElement<S>& a, std::uint32_t p) {
    AlgebraElement<S> r(a.space());
    for (const auto& [m, h] : a.terms()) {
        S c = h.coeff(p);
        if (!ScalarTraits<S>::is_zero(c)) r.add_term(m, HPoly<S>::constant(c));
    }
    return r;
}

/// Largest coefficient magnitude, as a double (for float-backend tolerances).
template <class S>
double max_abs_coeff(const AlgebraElement<S>& a) {
    double m = 0.0;
    for (const auto& [mono, h] : a.terms())
        for (const auto& [p, c] : h.coeffs()) m = std::max(m, ScalarTraits<S>::abs(c));
    return m;
}

/// Max coefficientwise deviation between two elements.
template <class S>
double element_distance(const AlgebraElement<S>& a, const AlgebraElement<S>& b) {
    return max_abs_coeff(a - b);
}

}  // namespace starfield

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "starfield/element.hpp"
#include "starfield/pairing.hpp"

namespace starfield {

namespace detail {

inline long long factorial(std::uint32_t n) {
    long long f = 1;
    for (std::uint32_t i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Enumerates contraction-count matrices between the factor multisets of two
/// monomials.  A cell (r,s) says how many factors of mode r in `a` contract
/// against factors of mode s in `b`.  The combinatorial weight counts the
/// (subset, injection) pairs with that profile when factors are expanded by
/// position: choosing which a-positions go to each target mode is a
/// multinomial, and mapping them to distinct b-positions is a falling
/// factorial.
template <class S, class Emit>
void for_each_contraction_profile(const PairingForm<S>& B, const Monomial& ma,
                                  const Monomial& mb, Emit&& emit) {
    using Traits = ScalarTraits<S>;
    const std::size_t n = B.size();

    std::vector<std::size_t> ra, sb;  // modes present in each monomial
    for (std::size_t i = 0; i < n; ++i) {
        if (ma.exponent(i) > 0) ra.push_back(i);
        if (mb.exponent(i) > 0) sb.push_back(i);
    }

    std::vector<std::uint32_t> a_left(ra.size()), b_left(sb.size());
    for (std::size_t i = 0; i < ra.size(); ++i) a_left[i] = ma.exponent(ra[i]);
    for (std::size_t j = 0; j < sb.size(); ++j) b_left[j] = mb.exponent(sb[j]);

    // counts[i][j] = contractions of mode ra[i] against mode sb[j]
    std::vector<std::vector<std::uint32_t>> counts(ra.size(),
                                                   std::vector<std::uint32_t>(sb.size(), 0));

    auto weight_and_emit = [&]() {
        // multinomial over each a-mode row, falling factorial on each b-mode column
        long long w = 1;
        std::uint32_t total = 0;
        for (std::size_t i = 0; i < ra.size(); ++i) {
            std::uint32_t row = 0;
            for (std::size_t j = 0; j < sb.size(); ++j) row += counts[i][j];
            total += row;
            w *= factorial(ma.exponent(ra[i])) / factorial(ma.exponent(ra[i]) - row);
            for (std::size_t j = 0; j < sb.size(); ++j) w /= factorial(counts[i][j]);
        }
        for (std::size_t j = 0; j < sb.size(); ++j) {
            std::uint32_t col = 0;
            for (std::size_t i = 0; i < ra.size(); ++i) col += counts[i][j];
            w *= factorial(mb.exponent(sb[j])) / factorial(mb.exponent(sb[j]) - col);
        }

        S coeff = Traits::from_int(w);
        for (std::size_t i = 0; i < ra.size(); ++i)
            for (std::size_t j = 0; j < sb.size(); ++j)
                for (std::uint32_t c = 0; c < counts[i][j]; ++c)
                    coeff = coeff * B.at(ra[i], sb[j]);

        std::vector<std::uint32_t> rem_a(ma.exponents()), rem_b(mb.exponents());
        for (std::size_t i = 0; i < ra.size(); ++i)
            for (std::size_t j = 0; j < sb.size(); ++j) {
                rem_a[ra[i]] -= counts[i][j];
                rem_b[sb[j]] -= counts[i][j];
            }
        Monomial rest = Monomial(std::move(rem_a)).times(Monomial(std::move(rem_b)));
        emit(total, std::move(coeff), std::move(rest));
    };

    // depth-first over cells in row-major order
    auto rec = [&](auto&& self, std::size_t cell) -> void {
        if (cell == ra.size() * sb.size()) {
            weight_and_emit();
            return;
        }
        std::size_t i = cell / sb.size(), j = cell % sb.size();
        std::uint32_t cap = std::min(a_left[i], b_left[j]);
        for (std::uint32_t c = 0; c <= cap; ++c) {
            counts[i][j] = c;
            a_left[i] -= c;
            b_left[j] -= c;
            self(self, cell + 1);
            a_left[i] += c;
            b_left[j] += c;
        }
        counts[i][j] = 0;
    };
    rec(rec, 0);
}

}  // namespace detail

/// Contraction star product, closed form: the sum over subsets of factors of
/// `a` and injections into factors of `b`, each weighted by the product of
/// pairing values and hbar^p.  The p = 0 term is the symmetric product.
template <class S>
AlgebraElement<S> star(const PairingForm<S>& B, const AlgebraElement<S>& a,
                       const AlgebraElement<S>& b) {
    require_same_space(a.space(), b.space());
    require_same_space(B.space(), a.space());

    AlgebraElement<S> result(a.space());
    for (const auto& [ma, ha] : a.terms()) {
        for (const auto& [mb, hb] : b.terms()) {
            HPoly<S> hab = ha * hb;
            detail::for_each_contraction_profile(
                B, ma, mb, [&](std::uint32_t p, S coeff, Monomial rest) {
                    if (ScalarTraits<S>::is_zero(coeff)) return;
                    result.add_term(rest, hab.scaled(coeff).shifted(p));
                });
        }
    }
    return result;
}

/// Iterated-contraction star product (independent oracle for `star`):
/// apply the pairing-weighted single-contraction map p times on the tensor
/// factors, divide by p!, and multiply the legs out.  Ordered contraction
/// sequences over p steps; their count is p! times the subset/injection
/// count, which the division restores.
template <class S>
AlgebraElement<S> star_iterated(const PairingForm<S>& B, const AlgebraElement<S>& a,
                                const AlgebraElement<S>& b) {
    require_same_space(a.space(), b.space());
    require_same_space(B.space(), a.space());
    using Traits = ScalarTraits<S>;

    const std::size_t n = a.space()->size();

    auto tensor_less = [](const std::pair<Monomial, Monomial>& x,
                          const std::pair<Monomial, Monomial>& y) {
        MonomialGradedLess less;
        if (less(x.first, y.first)) return true;
        if (less(y.first, x.first)) return false;
        return less(x.second, y.second);
    };
    using TensorMap =
        std::map<std::pair<Monomial, Monomial>, HPoly<S>, decltype(tensor_less)>;

    TensorMap state(tensor_less);
    for (const auto& [ma, ha] : a.terms())
        for (const auto& [mb, hb] : b.terms()) {
            HPoly<S> h = ha * hb;
            if (h.is_zero()) continue;
            auto key = std::make_pair(ma, mb);
            auto it = state.find(key);
            if (it == state.end())
                state.emplace(std::move(key), std::move(h));
            else
                it->second += h;
        }

    AlgebraElement<S> result(a.space());
    std::uint32_t p = 0;
    while (!state.empty()) {
        // accumulate hbar^p / p! * (left ⊙ right)
        S inv_fact = Traits::one() / Traits::from_int(detail::factorial(p));
        for (const auto& [mm, h] : state)
            result.add_term(mm.first.times(mm.second), h.scaled(inv_fact).shifted(p));

        // one more application of the contraction map M
        TensorMap next(tensor_less);
        for (const auto& [mm, h] : state) {
            const auto& [ma, mb] = mm;
            for (std::size_t r = 0; r < n; ++r) {
                std::uint32_t er = ma.exponent(r);
                if (er == 0) continue;
                for (std::size_t s = 0; s < n; ++s) {
                    std::uint32_t es = mb.exponent(s);
                    if (es == 0) continue;
                    S c = B.at(r, s) * Traits::from_int(static_cast<long long>(er) * es);
                    if (Traits::is_zero(c)) continue;
                    HPoly<S> hc = h.scaled(c);
                    if (hc.is_zero()) continue;
                    auto key = std::make_pair(ma.lowered(r), mb.lowered(s));
                    auto it = next.find(key);
                    if (it == next.end())
                        next.emplace(std::move(key), std::move(hc));
                    else {
                        it->second += hc;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
            }
        }
        state = std::move(next);
        ++p;
    }
    return result;
}

/// Star commutator a ⋆ b − b ⋆ a; always divisible by hbar.
template <class S>
AlgebraElement<S> commutator(const PairingForm<S>& B, const AlgebraElement<S>& a,
                             const AlgebraElement<S>& b) {
    return star(B, a, b) - star(B, b, a);
}

namespace detail {

template <class S>
AlgebraElement<S> poisson_biderivation(const PairingForm<S>& B, const AlgebraElement<S>& a,
                                       const AlgebraElement<S>& b) {
    AlgebraElement<S> r(a.space());
    const std::size_t n = a.space()->size();
    for (std::size_t rm = 0; rm < n; ++rm) {
        AlgebraElement<S> da = contract(rm, a);
        if (da.is_zero()) continue;
        for (std::size_t sm = 0; sm < n; ++sm) {
            S w = B.at(rm, sm) - B.at(sm, rm);
            if (ScalarTraits<S>::is_zero(w)) continue;
            AlgebraElement<S> db = contract(sm, b);
            if (db.is_zero()) continue;
            r += sym_mul(da, db).scaled(w);
        }
    }
    return r;
}

}  // namespace detail

/// Poisson bracket: the Leibniz biderivation extending
/// {u, v} = B[u][v] − B[v][u] on generators.  Cross-checked against the
/// hbar^1 part of the star commutator on every call.
template <class S>
AlgebraElement<S> poisson(const PairingForm<S>& B, const AlgebraElement<S>& a,
                          const AlgebraElement<S>& b) {
    require_same_space(a.space(), b.space());
    require_same_space(B.space(), a.space());

    AlgebraElement<S> bracket = detail::poisson_biderivation(B, a, b);

    AlgebraElement<S> comm = commutator(B, a, b);
    AlgebraElement<S> quotient(a.space());
    for (const auto& [m, h] : comm.terms()) {
        if (!ScalarTraits<S>::is_zero(h.coeff(0)))
            throw InternalError("star commutator not divisible by hbar");
        quotient.add_term(m, h.hbar_quotient());
    }
    AlgebraElement<S> lhs = project_pi(quotient);
    AlgebraElement<S> rhs = project_pi(bracket);
    if constexpr (ScalarTraits<S>::exact) {
        if (lhs != rhs) throw InternalError("poisson cross-check failed");
    } else {
        double scale = std::max({1.0, max_abs_coeff(lhs), max_abs_coeff(rhs)});
        if (element_distance(lhs, rhs) > 1e-9 * scale)
            throw InternalError("poisson cross-check failed (float backend)");
    }
    return bracket;
}

/// Checks the contraction-distribution identity
///   i^k(z)(a ⊙ b) = Σ_j Σ_{|J|=j} i^j(z_J) a ⊙ i^{k−j}(z_∖J) b
/// for the given contraction sequence, together with commutativity of
/// single contractions.  Returns the verdict rather than asserting.
template <class S>
bool lemma1_check(const std::vector<std::size_t>& z_modes, const AlgebraElement<S>& a,
                  const AlgebraElement<S>& b) {
    require_same_space(a.space(), b.space());
    const std::size_t k = z_modes.size();

    auto apply_seq = [](const std::vector<std::size_t>& seq, AlgebraElement<S> x) {
        for (std::size_t m : seq) x = contract(m, x);
        return x;
    };

    // item 1: contractions commute pairwise
    AlgebraElement<S> ab = sym_mul(a, b);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            AlgebraElement<S> xy = contract(z_modes[i], contract(z_modes[j], ab));
            AlgebraElement<S> yx = contract(z_modes[j], contract(z_modes[i], ab));
            if (xy != yx) return false;
        }

    AlgebraElement<S> lhs = apply_seq(z_modes, ab);

    AlgebraElement<S> rhs(a.space());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        std::vector<std::size_t> zj, zrest;
        for (std::size_t i = 0; i < k; ++i)
            (mask >> i & 1 ? zj : zrest).push_back(z_modes[i]);
        rhs += sym_mul(apply_seq(zj, a), apply_seq(zrest, b));
    }
    return lhs == rhs;
}

}  // namespace starfield

#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "starfield/fock.hpp"
#include "starfield/klein_gordon.hpp"
#include "starfield/star.hpp"

namespace starfield::fock {

/// Everything needed to represent mode polynomials as operators on a
/// truncated Fock space: the generator table, the space, the momentum
/// geometry, and cached per-generator operators.
class FockContext {
public:
    FockContext(kg::ModeTable table, int ncap)
        : table_(std::move(table)),
          space_(table_.config().n_field_modes(), ncap) {
        const kg::KGConfig& cfg = table_.config();
        geo_.mu.resize(static_cast<std::size_t>(cfg.n_field_modes()));
        geo_.reflect.resize(static_cast<std::size_t>(cfg.n_field_modes()));
        for (int k = -cfg.kmax; k <= cfg.kmax; ++k) {
            std::size_t i = static_cast<std::size_t>(k + cfg.kmax);
            geo_.mu[i] = kg::mu(k, cfg);
            geo_.reflect[i] = cfg.kmax - k;
        }
        for (std::size_t i = 0; i < table_.size(); ++i) {
            kg::CauchyData cd = kg::cauchy_data(table_.mode(i), cfg);
            FieldPair value_field = field_ops(cd.value_at_0, geo_, space_);
            FieldPair deriv_field = field_ops(cd.tderiv_at_0, geo_, space_);
            pi_of_value_.push_back(value_field.pi);
            phi_of_tderiv_.push_back(deriv_field.phi);

            kg::WickCoefficients wc = kg::wick_coefficients(table_.mode(i), cfg);
            LadderPair g = ladder(wc.G, geo_, space_);
            LadderPair f = ladder(wc.F, geo_, space_);
            adag_G_.push_back(g.a_dagger);
            a_F_.push_back(f.a);
        }
    }

    const kg::ModeTable& table() const { return table_; }
    const FockSpace& space() const { return space_; }
    const ModeGeometry& geometry() const { return geo_; }

    const FockOperator& pi_of_value(std::size_t mode) const { return pi_of_value_.at(mode); }
    const FockOperator& phi_of_tderiv(std::size_t mode) const {
        return phi_of_tderiv_.at(mode);
    }
    const FockOperator& a_dagger_G(std::size_t mode) const { return adag_G_.at(mode); }
    const FockOperator& a_F(std::size_t mode) const { return a_F_.at(mode); }

    /// Memoized Θ / Θ_W images of bare monomials.  The subset sum over
    /// factors collapses to a two-term recursion because factors commute
    /// within each block: peeling the last factor psi of Ψ = Ψ' ⊙ psi,
    ///   Θ(Ψ)   = Θ(Ψ') phi_m(dt psi) − pi_m(psi) Θ(Ψ')
    ///   Θ_W(Ψ) = a†(G psi) Θ_W(Ψ') + Θ_W(Ψ') a(F psi)
    const FockOperator& theta_monomial(const Monomial& mono) const {
        return cached(theta_cache_, mono, [&](const FockOperator& acc, std::size_t m) {
            FockOperator next = acc * phi_of_tderiv(m) - pi_of_value(m) * acc;
            return next;
        });
    }
    const FockOperator& theta_wick_monomial(const Monomial& mono) const {
        return cached(theta_wick_cache_, mono, [&](const FockOperator& acc, std::size_t m) {
            FockOperator next = a_dagger_G(m) * acc + acc * a_F(m);
            return next;
        });
    }

private:
    using Cache = std::map<Monomial, FockOperator, MonomialGradedLess>;

    template <class Step>
    const FockOperator& cached(Cache& cache, const Monomial& mono, Step&& step) const {
        auto it = cache.find(mono);
        if (it != cache.end()) return it->second;
        std::vector<std::size_t> factors = mono.factor_list();
        FockOperator acc = FockOperator::identity(space_);
        for (std::size_t m : factors) acc = step(acc, m);
        acc.formal_degree = static_cast<int>(factors.size());
        return cache.emplace(mono, std::move(acc)).first->second;
    }

    kg::ModeTable table_;
    FockSpace space_;
    ModeGeometry geo_;
    std::vector<FockOperator> pi_of_value_;
    std::vector<FockOperator> phi_of_tderiv_;
    std::vector<FockOperator> adag_G_;
    std::vector<FockOperator> a_F_;
    mutable Cache theta_cache_;
    mutable Cache theta_wick_cache_;
};

/// Θ: all conjugate-momentum factors to the left of all field factors,
/// with the alternating sign of the observable functional; hbar maps to -i.
inline FockOperator theta(const FockContext& ctx, const AlgebraElement<Complex>& A) {
    require_same_space(ctx.table().space(), A.space());
    FockOperator total = FockOperator::zero(ctx.space());
    for (const auto& [mono, h] : A.terms()) {
        Complex coeff = h.eval_at(Complex{0.0, -1.0});
        const FockOperator& op = ctx.theta_monomial(mono);
        total += op.scaled(coeff);
        total.formal_degree = std::max(total.formal_degree, op.formal_degree);
    }
    return total;
}

/// Θ_W: normal order — creation operators a†(G psi) left of annihilation
/// operators a(F psi); hbar maps to 1.
inline FockOperator theta_wick(const FockContext& ctx, const AlgebraElement<Complex>& A) {
    require_same_space(ctx.table().space(), A.space());
    FockOperator total = FockOperator::zero(ctx.space());
    for (const auto& [mono, h] : A.terms()) {
        Complex coeff = h.eval_at(Complex{1.0, 0.0});
        const FockOperator& op = ctx.theta_wick_monomial(mono);
        total += op.scaled(coeff);
        total.formal_degree = std::max(total.formal_degree, op.formal_degree);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Wick normal-form rewriting of pi/phi words
// ---------------------------------------------------------------------------

enum class FactorKind { Pi, Phi };

struct WordFactor {
    FactorKind kind;
    std::vector<Complex> data;  // Fourier coefficients of a real function
};

/// A formal product of pi_m/phi_m symbols with a complex coefficient.
/// The empty word is the identity with coefficient 1.
struct OperatorWord {
    Complex coeff{1.0, 0.0};
    std::vector<WordFactor> factors;

    bool normal_ordered() const {
        bool seen_phi = false;
        for (const WordFactor& f : factors) {
            if (f.kind == FactorKind::Phi) seen_phi = true;
            else if (seen_phi) return false;
        }
        return true;
    }
};

/// Matrix realization of a word.
inline FockOperator word_matrix(const OperatorWord& w, const ModeGeometry& geo,
                                const FockSpace& F) {
    FockOperator prod = FockOperator::identity(F);
    for (const WordFactor& f : w.factors) {
        FieldPair fp = field_ops(f.data, geo, F);
        prod = prod * (f.kind == FactorKind::Pi ? fp.pi : fp.phi);
    }
    return prod.scaled(w.coeff);
}

/// Wick rewrite of a product of two normal-ordered words into a sum of
/// normal-ordered words: contract each subset of the left word's phi
/// factors injectively into the right word's pi factors, each contraction
/// contributing i times the circle integral of the two functions.
inline std::vector<OperatorWord> wick_normal_form(const OperatorWord& left,
                                                  const OperatorWord& right,
                                                  const ModeGeometry& geo) {
    if (!left.normal_ordered() || !right.normal_ordered())
        throw DomainError("wick_normal_form requires normal-ordered input words");

    std::vector<const WordFactor*> left_pi, left_phi, right_pi, right_phi;
    for (const WordFactor& f : left.factors)
        (f.kind == FactorKind::Pi ? left_pi : left_phi).push_back(&f);
    for (const WordFactor& f : right.factors)
        (f.kind == FactorKind::Pi ? right_pi : right_phi).push_back(&f);

    const std::size_t b = left_phi.size(), c = right_pi.size();
    std::vector<OperatorWord> out;

    std::uint64_t subsets = std::uint64_t{1} << b;
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t j = 0; j < b; ++j)
            if (mask >> j & 1) chosen.push_back(j);
        if (chosen.size() > c) continue;

        std::vector<bool> used(c, false);
        std::vector<std::size_t> target(chosen.size(), 0);
        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == chosen.size()) {
                OperatorWord w;
                w.coeff = left.coeff * right.coeff;
                for (std::size_t d = 0; d < chosen.size(); ++d) {
                    Complex integral = product_integral(left_phi[chosen[d]]->data,
                                                        right_pi[target[d]]->data, geo);
                    w.coeff *= Complex{0.0, 1.0} * integral;
                }
                for (const WordFactor* f : left_pi) w.factors.push_back(*f);
                for (std::size_t t = 0; t < c; ++t)
                    if (!used[t]) w.factors.push_back(*right_pi[t]);
                for (const WordFactor* f : right_phi) w.factors.push_back(*f);
                for (std::size_t j = 0; j < b; ++j)
                    if (!(mask >> j & 1)) w.factors.push_back(*left_phi[j]);
                out.push_back(std::move(w));
                return;
            }
            for (std::size_t t = 0; t < c; ++t) {
                if (used[t]) continue;
                used[t] = true;
                target[depth] = t;
                self(self, depth + 1);
                used[t] = false;
            }
        };
        rec(rec, 0);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ordering-theorem verification
// ---------------------------------------------------------------------------

enum class OrderingKind { Hbar, Wick };

struct OrderingReport {
    std::string theorem;  // "ordre" or "quantification"
    int deg_a = 0;
    int deg_b = 0;
    int ncap = 0;
    double max_abs_dev = 0.0;
    int guard_dim = 0;

    std::string to_tsv() const {
        return theorem + "\t" + std::to_string(deg_a) + "\t" + std::to_string(deg_b) + "\t" +
               std::to_string(ncap) + "\t" + starfield::detail::double_to_text(max_abs_dev) +
               "\t" + std::to_string(guard_dim);
    }
};

/// Compares the two sides of the ordering theorem on every guarded matrix
/// element: Θ(A)Θ(B) vs Θ(A ⋆ B) with the hypersurface pairing (hbar falls
/// to -i), or Θ_W(A)Θ_W(B) vs Θ_W(A ⋆_W B) with the Wick pairing (hbar
/// falls to 1).  Refuses when the combined formal degree exceeds Ncap.
inline OrderingReport verify_ordering_theorem(const FockContext& ctx,
                                              const AlgebraElement<Complex>& A,
                                              const AlgebraElement<Complex>& B,
                                              OrderingKind which,
                                              const PairingForm<Complex>& form) {
    int deg = static_cast<int>(A.degree() + B.degree());
    if (deg > ctx.space().ncap())
        throw GuardError("combined formal degree " + std::to_string(deg) +
                         " exceeds Ncap = " + std::to_string(ctx.space().ncap()));
    int guard = ctx.space().guard_dimension(deg);

    FockOperator lhs, rhs;
    if (which == OrderingKind::Hbar) {
        lhs = theta(ctx, A) * theta(ctx, B);
        rhs = theta(ctx, star(form, A, B));
    } else {
        lhs = theta_wick(ctx, A) * theta_wick(ctx, B);
        rhs = theta_wick(ctx, star(form, A, B));
    }

    OrderingReport rep;
    rep.theorem = which == OrderingKind::Hbar ? "ordre" : "quantification";
    rep.deg_a = static_cast<int>(A.degree());
    rep.deg_b = static_cast<int>(B.degree());
    rep.ncap = ctx.space().ncap();
    rep.guard_dim = guard;
    rep.max_abs_dev = guarded_deviation(lhs, rhs, guard);
    return rep;
}

}  // namespace starfield::fock

#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "starfield/config.hpp"
#include "starfield/ordering.hpp"
#include "starfield/testkit.hpp"

namespace starfield::checks {

struct SuiteResult {
    std::string report;
    bool pass = true;

    void line(const std::string& s) { report += s + "\n"; }
    void merge(const SuiteResult& o) {
        report += o.report;
        pass = pass && o.pass;
    }
};

namespace detail {

using GR = GaussianRational;
using ExactElem = AlgebraElement<GR>;
using CElem = AlgebraElement<Complex>;

inline std::string fmt(double x) { return starfield::detail::double_to_text(x); }

inline std::string count_line(const std::string& name, int good, int total) {
    std::string verdict = good == total ? "PASS" : "FAIL";
    return name + "\t" + verdict + "\t" + std::to_string(good) + "/" + std::to_string(total) +
           "\texact";
}

inline std::string dev_line(const std::string& name, double dev, double tol,
                            const std::string& extra = "") {
    std::string verdict = dev <= tol ? "PASS" : "FAIL";
    std::string s = name + "\t" + verdict + "\tmax_dev=" + fmt(dev) + "\ttol=" + fmt(tol);
    if (!extra.empty()) s += "\t" + extra;
    return s;
}

inline ModeSpacePtr abstract_space(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back("g" + std::to_string(i));
    return make_mode_space(labels);
}

}  // namespace detail

/// Star-product laws on the exact backend: associativity, the hbar = 0
/// deformation property, unit laws, and three-way agreement of the closed
/// form, the iterated form, and the brute-force injection oracle.
inline SuiteResult run_assoc(const RunConfig& cfg) {
    using namespace detail;
    SuiteResult out;
    testkit::RandomStream root(cfg.seed);

    {
        ModeSpacePtr space = abstract_space(5);
        testkit::RandomStream rng = root.split(1);
        auto B = testkit::random_pairing<GR>(rng, space);
        int ok_assoc = 0, ok_deform = 0, ok_unit = 0;
        ExactElem one = ExactElem::unit(space);
        for (int t = 0; t < cfg.trials; ++t) {
            ExactElem a = testkit::random_element<GR>(rng, space, 2, 1);
            ExactElem b = testkit::random_element<GR>(rng, space, 2, 1);
            ExactElem c = testkit::random_element<GR>(rng, space, 2, 1);
            if (star(B, a, star(B, b, c)) == star(B, star(B, a, b), c)) ++ok_assoc;
            if (project_pi(star(B, a, b)) == sym_mul(project_pi(a), project_pi(b)))
                ++ok_deform;
            if (star(B, one, a) == a && star(B, a, one) == a) ++ok_unit;
        }
        out.line(count_line("assoc", ok_assoc, cfg.trials));
        out.line(count_line("deformation", ok_deform, cfg.trials));
        out.line(count_line("unit", ok_unit, cfg.trials));
        out.pass = ok_assoc == cfg.trials && ok_deform == cfg.trials && ok_unit == cfg.trials;
    }

    {
        // all monomial pairs over 3 modes with total degree <= 4
        ModeSpacePtr space = abstract_space(3);
        testkit::RandomStream rng = root.split(2);
        auto B = testkit::random_pairing<GR>(rng, space);
        std::vector<Monomial> monos;
        for (std::uint32_t i = 0; i <= 4; ++i)
            for (std::uint32_t j = 0; i + j <= 4; ++j)
                for (std::uint32_t k = 0; i + j + k <= 4; ++k)
                    monos.push_back(Monomial(std::vector<std::uint32_t>{i, j, k}));
        int ok = 0, total = 0;
        for (const Monomial& ma : monos)
            for (const Monomial& mb : monos) {
                ++total;
                ExactElem ea(space), eb(space);
                ea.add_term(ma, HPoly<GR>::constant(ScalarTraits<GR>::one()));
                eb.add_term(mb, HPoly<GR>::constant(ScalarTraits<GR>::one()));
                ExactElem oracle = testkit::injection_oracle<GR>(B, ma, mb, space);
                if (star(B, ea, eb) == oracle && star_iterated(B, ea, eb) == oracle) ++ok;
            }
        out.line(count_line("star3way", ok, total));
        out.pass = out.pass && ok == total;
    }
    return out;
}

/// Poisson structure on the exact backend: the hbar^1 commutator
/// correspondence, the Jacobi identity, and the Leibniz rule.
inline SuiteResult run_poisson(const RunConfig& cfg) {
    using namespace detail;
    SuiteResult out;
    ModeSpacePtr space = abstract_space(5);
    testkit::RandomStream rng = testkit::RandomStream(cfg.seed).split(3);
    auto B = testkit::random_pairing<GR>(rng, space);

    int ok_corr = 0, ok_jacobi = 0, ok_leibniz = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        ExactElem a = testkit::random_element<GR>(rng, space, 3, 0);
        ExactElem b = testkit::random_element<GR>(rng, space, 3, 0);
        ExactElem c = testkit::random_element<GR>(rng, space, 3, 0);
        if (hbar_coefficient(commutator(B, a, b), 1) == poisson(B, a, b)) ++ok_corr;
        ExactElem jac = poisson(B, a, poisson(B, b, c)) + poisson(B, c, poisson(B, a, b)) +
                        poisson(B, b, poisson(B, c, a));
        if (jac.is_zero()) ++ok_jacobi;
        ExactElem leib = poisson(B, sym_mul(a, b), c) -
                         (sym_mul(a, poisson(B, b, c)) + sym_mul(poisson(B, a, c), b));
        if (leib.is_zero()) ++ok_leibniz;
    }
    out.line(count_line("poisson-corr", ok_corr, cfg.trials));
    out.line(count_line("jacobi", ok_jacobi, cfg.trials));
    out.line(count_line("leibniz", ok_leibniz, cfg.trials));
    out.pass = ok_corr == cfg.trials && ok_jacobi == cfg.trials && ok_leibniz == cfg.trials;
    return out;
}

/// The contraction-distribution identity, k <= 3, exact.
inline SuiteResult run_lemma1(const RunConfig& cfg) {
    using namespace detail;
    SuiteResult out;
    ModeSpacePtr space = abstract_space(4);
    testkit::RandomStream rng = testkit::RandomStream(cfg.seed).split(4);
    int ok = 0;
    for (int t = 0; t < cfg.trials; ++t) {
        ExactElem a = testkit::random_element<GR>(rng, space, 3, 0);
        ExactElem b = testkit::random_element<GR>(rng, space, 3, 0);
        std::size_t k = static_cast<std::size_t>(t % 4);  // k = 0..3
        std::vector<std::size_t> z;
        for (std::size_t i = 0; i < k; ++i) z.push_back(rng.below(space->size()));
        if (lemma1_check<GR>(z, a, b)) ++ok;
    }
    out.line(count_line("lemma1", ok, cfg.trials));
    out.pass = ok == cfg.trials;
    return out;
}

/// Canonical commutation relations on the truncated Fock space, plus the
/// ladder-commutator scalars.  Thresholds are pinned at 1e-10.
inline SuiteResult run_ccr(const RunConfig& cfg) {
    using namespace detail;
    constexpr double kTol = 1e-10;
    if (cfg.ncap < 2)
        throw GuardError("ccr needs Ncap >= 2 (degree-2 operator products)");

    kg::KGConfig kcfg = cfg.kg_config();
    fock::FockSpace F(kcfg.n_field_modes(), cfg.ncap);
    fock::ModeGeometry geo;
    for (int k = -kcfg.kmax; k <= kcfg.kmax; ++k) {
        geo.mu.push_back(kg::mu(k, kcfg));
        geo.reflect.push_back(kcfg.kmax - k);
    }
    int guard = F.guard_dimension(2);
    double rootL = std::sqrt(kcfg.circumference);

    // real trig basis {1} ∪ {cos kx, sin kx}
    std::vector<std::vector<Complex>> basis;
    {
        std::vector<Complex> one(geo.mu.size(), Complex{0, 0});
        one[static_cast<std::size_t>(kcfg.kmax)] = Complex{rootL, 0.0};
        basis.push_back(one);
        for (int k = 1; k <= kcfg.kmax; ++k) {
            std::vector<Complex> ck(geo.mu.size(), Complex{0, 0});
            ck[static_cast<std::size_t>(kcfg.kmax + k)] = Complex{0.5 * rootL, 0.0};
            ck[static_cast<std::size_t>(kcfg.kmax - k)] = Complex{0.5 * rootL, 0.0};
            basis.push_back(ck);
            std::vector<Complex> sk(geo.mu.size(), Complex{0, 0});
            sk[static_cast<std::size_t>(kcfg.kmax + k)] = Complex{0.0, -0.5 * rootL};
            sk[static_cast<std::size_t>(kcfg.kmax - k)] = Complex{0.0, 0.5 * rootL};
            basis.push_back(sk);
        }
    }

    SuiteResult out;
    double dev_ccr = 0.0, dev_vanish = 0.0;
    int pairs = 0;
    std::vector<fock::FieldPair> ops;
    for (const auto& f : basis) ops.push_back(fock::field_ops(f, geo, F));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            ++pairs;
            fock::FockOperator comm =
                ops[i].phi * ops[j].pi - ops[j].pi * ops[i].phi;
            Complex integral = product_integral(basis[i], basis[j], geo);
            fock::FockOperator expect =
                fock::FockOperator::identity(F).scaled(Complex{0.0, 1.0} * integral);
            dev_ccr = std::max(dev_ccr, guarded_deviation(comm, expect, guard));

            fock::FockOperator pp = ops[i].phi * ops[j].phi - ops[j].phi * ops[i].phi;
            fock::FockOperator qq = ops[i].pi * ops[j].pi - ops[j].pi * ops[i].pi;
            dev_vanish = std::max(dev_vanish, pp.max_abs_on_block(guard));
            dev_vanish = std::max(dev_vanish, qq.max_abs_on_block(guard));
        }
    out.line(dev_line("ccr", dev_ccr, kTol, "pairs=" + std::to_string(pairs)));
    out.line(dev_line("ccr-vanishing", dev_vanish, kTol));

    // ladder commutators on the delta basis
    double dev_ladder = 0.0;
    int n = kcfg.n_field_modes();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            std::vector<Complex> f(static_cast<std::size_t>(n), Complex{0, 0});
            std::vector<Complex> g(static_cast<std::size_t>(n), Complex{0, 0});
            f[static_cast<std::size_t>(j)] = Complex{1.0, 0.0};
            g[static_cast<std::size_t>(k)] = Complex{1.0, 0.0};
            fock::LadderPair lf = fock::ladder(f, geo, F), lg = fock::ladder(g, geo, F);
            fock::FockOperator comm = lf.a * lg.a_dagger - lg.a_dagger * lf.a;
            fock::FockOperator expect = fock::FockOperator::identity(F).scaled(
                fock::ladder_commutator_scalar(f, g, geo));
            dev_ladder = std::max(dev_ladder, guarded_deviation(comm, expect, guard));
        }
    out.line(dev_line("ladder", dev_ladder, kTol, "pairs=" + std::to_string(n * n)));

    out.pass = dev_ccr <= kTol && dev_vanish <= kTol && dev_ladder <= kTol;
    return out;
}

namespace detail {

/// Shared driver for the two ordering theorems: verifies all ordered pairs
/// from a seeded family of random elements plus the named special cases,
/// emitting one report line per pair.
inline SuiteResult ordering_family(const RunConfig& cfg, fock::OrderingKind kind,
                                   std::uint64_t stream_tag) {
    if (2 * cfg.max_degree > cfg.ncap)
        throw GuardError("ordering theorem needs Ncap >= 2*max_degree (got Ncap = " +
                         std::to_string(cfg.ncap) +
                         ", max_degree = " + std::to_string(cfg.max_degree) + ")");

    kg::ModeTable table = kg::ModeTable::standard(cfg.kg_config());
    fock::FockContext ctx(table, cfg.ncap);
    PairingForm<Complex> form = kind == fock::OrderingKind::Hbar
                                    ? kg::sigma_pairing_form(table)
                                    : kg::wick_pairing_form(table);

    testkit::RandomStream rng = testkit::RandomStream(cfg.seed).split(stream_tag);
    int family = std::max(2, static_cast<int>(std::sqrt(static_cast<double>(cfg.trials))));
    std::vector<CElem> elems;
    CElem one = CElem::unit(table.space());
    CElem s0 = CElem::generator(table.space(), "s0");
    CElem c0 = CElem::generator(table.space(), "c0");
    elems.push_back(one);
    elems.push_back(s0);
    elems.push_back(sym_mul(s0, s0));
    elems.push_back(c0);
    for (int i = 0; i < family; ++i)
        elems.push_back(
            testkit::random_element<Complex>(rng, table.space(), cfg.max_degree, 1, true));

    SuiteResult out;
    double worst = 0.0;
    for (const CElem& a : elems)
        for (const CElem& b : elems) {
            fock::OrderingReport rep = verify_ordering_theorem(ctx, a, b, kind, form);
            out.line(rep.to_tsv());
            worst = std::max(worst, rep.max_abs_dev);
        }
    const char* name = kind == fock::OrderingKind::Hbar ? "ordre" : "quantification";
    out.line(dev_line(name, worst, cfg.tolerance,
                      "pairs=" + std::to_string(elems.size() * elems.size())));
    out.pass = worst <= cfg.tolerance;
    return out;
}

}  // namespace detail

/// The ordering morphism Θ(A)Θ(B) = Θ(A ⋆ B) over the seeded element family.
inline SuiteResult run_ordre(const RunConfig& cfg) {
    return detail::ordering_family(cfg, fock::OrderingKind::Hbar, 5);
}

/// Wick-side suite: the normal-form rewriter against the matrix oracle,
/// the Θ_W morphism theorem, and the star-W algebra laws on the float
/// backend (thresholds pinned at 1e-10).
inline SuiteResult run_wick(const RunConfig& cfg) {
    using namespace detail;
    constexpr double kTol = 1e-10;
    SuiteResult out;

    kg::KGConfig kcfg = cfg.kg_config();
    kg::ModeTable table = kg::ModeTable::standard(kcfg);

    {
        // Wick-lemma rewrite vs direct operator product
        fock::FockSpace F(kcfg.n_field_modes(), cfg.ncap);
        fock::ModeGeometry geo;
        for (int k = -kcfg.kmax; k <= kcfg.kmax; ++k) {
            geo.mu.push_back(kg::mu(k, kcfg));
            geo.reflect.push_back(kcfg.kmax - k);
        }
        testkit::RandomStream rng = testkit::RandomStream(cfg.seed).split(6);
        auto random_real = [&](void) {
            std::vector<Complex> f(static_cast<std::size_t>(kcfg.n_field_modes()));
            for (int k = 1; k <= kcfg.kmax; ++k) {
                Complex v{rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
                f[static_cast<std::size_t>(kcfg.kmax + k)] = v;
                f[static_cast<std::size_t>(kcfg.kmax - k)] = std::conj(v);
            }
            f[static_cast<std::size_t>(kcfg.kmax)] = Complex{rng.uniform01() * 2.0 - 1.0, 0.0};
            return f;
        };
        auto random_word = [&](int degree) {
            fock::OperatorWord w;
            w.coeff = Complex{rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
            int n_pi = static_cast<int>(rng.below(static_cast<std::uint64_t>(degree) + 1));
            for (int i = 0; i < n_pi; ++i)
                w.factors.push_back({fock::FactorKind::Pi, random_real()});
            for (int i = n_pi; i < degree; ++i)
                w.factors.push_back({fock::FactorKind::Phi, random_real()});
            return w;
        };

        double dev = 0.0;
        int word_trials = std::min(cfg.trials, 25);
        for (int t = 0; t < word_trials; ++t) {
            int da = 1 + static_cast<int>(rng.below(2));
            int db = 1 + static_cast<int>(rng.below(2));
            if (da + db > cfg.ncap)
                throw GuardError("wick lemma words need Ncap >= 4");
            fock::OperatorWord left = random_word(da), right = random_word(db);
            fock::FockOperator direct =
                word_matrix(left, geo, F) * word_matrix(right, geo, F);
            fock::FockOperator sum = fock::FockOperator::zero(F, da + db);
            for (const auto& w : wick_normal_form(left, right, geo))
                sum += word_matrix(w, geo, F);
            dev = std::max(dev, guarded_deviation(direct, sum, F.guard_dimension(da + db)));
        }
        out.line(dev_line("wicklemma", dev, kTol, "pairs=" + std::to_string(word_trials)));
        out.pass = out.pass && dev <= kTol;
    }

    {
        // Θ_W(1) = identity, then the morphism family
        fock::FockContext ctx(table, cfg.ncap);
        bool id_ok = theta_wick(ctx, CElem::unit(table.space())).is_identity(0.0);
        out.line(std::string("thetaW-unit\t") + (id_ok ? "PASS" : "FAIL") + "\texact");
        out.pass = out.pass && id_ok;

        SuiteResult morph = ordering_family(cfg, fock::OrderingKind::Wick, 7);
        out.merge(morph);
    }

    {
        // star-W algebra laws on the float backend
        auto W = kg::wick_pairing_form(table);
        auto Bsigma = kg::sigma_pairing_form(table);
        testkit::RandomStream rng = testkit::RandomStream(cfg.seed).split(8);
        double dev_assoc = 0.0, dev_deform = 0.0, dev_poisson = 0.0;
        for (int t = 0; t < cfg.trials; ++t) {
            CElem a = testkit::random_element<Complex>(rng, table.space(), 2, 1, true);
            CElem b = testkit::random_element<Complex>(rng, table.space(), 2, 1, true);
            CElem c = testkit::random_element<Complex>(rng, table.space(), 2, 1, true);
            dev_assoc = std::max(dev_assoc, element_distance(star(W, a, star(W, b, c)),
                                                             star(W, star(W, a, b), c)));
            dev_deform = std::max(
                dev_deform, element_distance(project_pi(star(W, a, b)),
                                             sym_mul(project_pi(a), project_pi(b))));
            CElem a0 = project_pi(a), b0 = project_pi(b);
            CElem lhs = hbar_coefficient(commutator(W, a0, b0), 1);
            CElem rhs = poisson(Bsigma, a0, b0).scaled(Complex{0.0, 1.0});
            dev_poisson = std::max(dev_poisson, element_distance(lhs, rhs));
        }
        out.line(dev_line("wstar-assoc", dev_assoc, kTol,
                          "trials=" + std::to_string(cfg.trials)));
        out.line(dev_line("wstar-deform", dev_deform, kTol));
        out.line(dev_line("wstar-poisson", dev_poisson, kTol));
        out.pass =
            out.pass && dev_assoc <= kTol && dev_deform <= kTol && dev_poisson <= kTol;
    }
    return out;
}

inline SuiteResult run_suite(const std::string& name, const RunConfig& cfg) {
    cfg.validate();
    if (name == "assoc") return run_assoc(cfg);
    if (name == "poisson") return run_poisson(cfg);
    if (name == "lemma1") return run_lemma1(cfg);
    if (name == "ccr") return run_ccr(cfg);
    if (name == "ordre") return run_ordre(cfg);
    if (name == "wick") return run_wick(cfg);
    if (name == "all") {
        SuiteResult all;
        for (const char* s : {"assoc", "poisson", "lemma1", "ccr", "ordre", "wick"})
            all.merge(run_suite(s, cfg));
        return all;
    }
    throw ConfigError("unknown check suite '" + name + "'");
}

}  // namespace starfield::checks

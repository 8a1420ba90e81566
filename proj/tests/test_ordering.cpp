#include <gtest/gtest.h>

#include <numbers>

#include "starfield/ordering.hpp"
#include "starfield/testkit.hpp"

using namespace starfield;
using namespace starfield::fock;
using testkit::RandomStream;
using Elem = AlgebraElement<Complex>;

namespace {

constexpr double kPi = std::numbers::pi;

kg::KGConfig default_cfg() {
    kg::KGConfig cfg;
    cfg.mass = 1.0;
    cfg.circumference = 2.0 * kPi;
    cfg.kmax = 1;
    cfg.quadrature_points = 64;
    return cfg;
}

FockContext make_context(int ncap) {
    return FockContext(kg::ModeTable::standard(default_cfg()), ncap);
}

/// Random real function on the circle as conjugate-symmetric Fourier data.
std::vector<Complex> random_real_function(RandomStream& rng, int kmax) {
    std::vector<Complex> f(static_cast<std::size_t>(2 * kmax + 1));
    for (int k = 1; k <= kmax; ++k) {
        Complex v{rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
        f[static_cast<std::size_t>(kmax + k)] = v;
        f[static_cast<std::size_t>(kmax - k)] = std::conj(v);
    }
    f[static_cast<std::size_t>(kmax)] = Complex{rng.uniform01() * 2.0 - 1.0, 0.0};
    return f;
}

OperatorWord random_word(RandomStream& rng, int kmax, int degree) {
    OperatorWord w;
    w.coeff = Complex{rng.uniform01() * 2.0 - 1.0, rng.uniform01() * 2.0 - 1.0};
    int n_pi = static_cast<int>(rng.below(static_cast<std::uint64_t>(degree) + 1));
    for (int i = 0; i < n_pi; ++i)
        w.factors.push_back({FactorKind::Pi, random_real_function(rng, kmax)});
    for (int i = n_pi; i < degree; ++i)
        w.factors.push_back({FactorKind::Phi, random_real_function(rng, kmax)});
    return w;
}

}  // namespace

TEST(ThetaTest, UnitAndHbarImages) {
    FockContext ctx = make_context(4);
    Elem one = Elem::unit(ctx.table().space());
    EXPECT_TRUE(theta(ctx, one).is_identity(1e-15));
    EXPECT_TRUE(theta_wick(ctx, one).is_identity(1e-15));

    // Θ(hbar c) = -i c id;  Θ_W(hbar c) = c id
    Complex c{0.75, -0.25};
    Elem hc = Elem::hbar(ctx.table().space()).scaled(c);
    FockOperator th = theta(ctx, hc);
    FockOperator expect = FockOperator::identity(ctx.space()).scaled(Complex{0.0, -1.0} * c);
    EXPECT_LE((th - expect).max_abs(), 1e-14);
    FockOperator tw = theta_wick(ctx, hc);
    FockOperator expect_w = FockOperator::identity(ctx.space()).scaled(c);
    EXPECT_LE((tw - expect_w).max_abs(), 1e-14);
}

TEST(ThetaTest, Degree1Structure) {
    FockContext ctx = make_context(5);
    for (std::size_t i = 0; i < ctx.table().size(); ++i) {
        Elem gen = Elem::generator(ctx.table().space(), i);
        // Θ(psi) = phi_m(dt psi|0) - pi_m(psi|0)
        FockOperator expect = ctx.phi_of_tderiv(i) - ctx.pi_of_value(i);
        EXPECT_LE((theta(ctx, gen) - expect).max_abs(), 1e-13);
        // Θ_W(psi) = a†(G psi) + a(F psi)
        FockOperator expect_w = ctx.a_dagger_G(i) + ctx.a_F(i);
        EXPECT_LE((theta_wick(ctx, gen) - expect_w).max_abs(), 1e-13);
        // both are hermitian for real modes
        FockOperator t = theta(ctx, gen), tw = theta_wick(ctx, gen);
        EXPECT_LE((t - t.adjoint()).max_abs(), 1e-12);
        EXPECT_LE((tw - tw.adjoint()).max_abs(), 1e-12);
    }
}

TEST(ThetaWickTest, VacuumExpectationOfQuadraticIsZero) {
    FockContext ctx = make_context(5);
    const ModeSpacePtr& sp = ctx.table().space();
    Elem pair = sym_mul(Elem::generator(sp, "s0"), Elem::generator(sp, "c0"));
    FockOperator op = theta_wick(ctx, pair);
    EXPECT_NEAR(std::abs(op.entry(0, 0)), 0.0, 1e-13);  // <0| Θ_W(psi ⊙ chi) |0> = 0
}

TEST(WickPairingTest, FockOracleFixesTheKernel) {
    // The hbar coefficient that makes the normal-ordering morphism hold on
    // generators is exactly [a(F psi), a†(G chi)]; the wick_pairing kernel
    // must reproduce it.  For (s0, c0) at m=1, L=2pi the value is i pi.
    FockContext ctx = make_context(6);
    const kg::KGConfig& cfg = ctx.table().config();
    int guard = ctx.space().guard_dimension(2);
    for (std::size_t r = 0; r < ctx.table().size(); ++r)
        for (std::size_t s = 0; s < ctx.table().size(); ++s) {
            FockOperator comm = ctx.a_F(r) * ctx.a_dagger_G(s) -
                                ctx.a_dagger_G(s) * ctx.a_F(r);
            Complex w = kg::wick_pairing(ctx.table().mode(r), ctx.table().mode(s), cfg);
            FockOperator expect = FockOperator::identity(ctx.space()).scaled(w);
            EXPECT_LE(guarded_deviation(comm, expect, guard), 1e-10);
        }
    Complex w_sc = kg::wick_pairing(ctx.table().mode("s0"), ctx.table().mode("c0"), cfg);
    EXPECT_NEAR(std::abs(w_sc - Complex{0.0, kPi}), 0.0, 1e-12);
}

TEST(WickNormalFormTest, PhiPiBaseCase) {
    // phi_m(f) pi_m(g) = i (integral fg) 1 + pi_m(g) phi_m(f)
    FockContext ctx = make_context(5);
    RandomStream rng(3);
    const auto& geo = ctx.geometry();

    OperatorWord left;
    left.factors.push_back({FactorKind::Phi, random_real_function(rng, 1)});
    OperatorWord right;
    right.factors.push_back({FactorKind::Pi, random_real_function(rng, 1)});

    auto words = wick_normal_form(left, right, geo);
    ASSERT_EQ(words.size(), 2u);
    // one scalar word (the full contraction) and one reordered word
    bool saw_scalar = false, saw_reordered = false;
    Complex integral = product_integral(left.factors[0].data, right.factors[0].data, geo);
    for (const auto& w : words) {
        if (w.factors.empty()) {
            saw_scalar = true;
            EXPECT_NEAR(std::abs(w.coeff - Complex{0.0, 1.0} * integral), 0.0, 1e-13);
        } else {
            saw_reordered = true;
            ASSERT_EQ(w.factors.size(), 2u);
            EXPECT_EQ(w.factors[0].kind, FactorKind::Pi);
            EXPECT_EQ(w.factors[1].kind, FactorKind::Phi);
        }
    }
    EXPECT_TRUE(saw_scalar);
    EXPECT_TRUE(saw_reordered);

    // pi pi words: no contractions available, single pass-through word
    OperatorWord pi1;
    pi1.factors.push_back({FactorKind::Pi, random_real_function(rng, 1)});
    auto pi_words = wick_normal_form(pi1, right, geo);
    ASSERT_EQ(pi_words.size(), 1u);
    EXPECT_EQ(pi_words[0].factors.size(), 2u);

    // non-normal-ordered input is refused
    OperatorWord bad;
    bad.factors.push_back({FactorKind::Phi, random_real_function(rng, 1)});
    bad.factors.push_back({FactorKind::Pi, random_real_function(rng, 1)});
    EXPECT_THROW(wick_normal_form(bad, right, geo), DomainError);
}

TEST(WickNormalFormTest, MatrixOracleOnRandomWords) {
    FockContext ctx = make_context(6);
    const auto& geo = ctx.geometry();
    const FockSpace& F = ctx.space();
    RandomStream rng(17);
    for (int trial = 0; trial < 12; ++trial) {
        int da = 1 + static_cast<int>(rng.below(2));
        int db = 1 + static_cast<int>(rng.below(2));
        OperatorWord left = random_word(rng, 1, da);
        OperatorWord right = random_word(rng, 1, db);

        FockOperator direct = word_matrix(left, geo, F) * word_matrix(right, geo, F);
        FockOperator rewritten = FockOperator::zero(F, da + db);
        for (const auto& w : wick_normal_form(left, right, geo))
            rewritten += word_matrix(w, geo, F);

        int guard = F.guard_dimension(da + db);
        EXPECT_LE(guarded_deviation(direct, rewritten, guard), 1e-10);
    }
}

TEST(OrderingTheoremTest, TrivialAndGeneratorCases) {
    FockContext ctx = make_context(6);
    auto sigma = kg::sigma_pairing_form(ctx.table());
    auto wick = kg::wick_pairing_form(ctx.table());
    const ModeSpacePtr& sp = ctx.table().space();

    Elem one = Elem::unit(sp);
    OrderingReport rep = verify_ordering_theorem(ctx, one, one, OrderingKind::Hbar, sigma);
    EXPECT_EQ(rep.max_abs_dev, 0.0);
    EXPECT_EQ(rep.guard_dim, ctx.space().dimension());

    Elem s0 = Elem::generator(sp, "s0"), c0 = Elem::generator(sp, "c0");
    rep = verify_ordering_theorem(ctx, s0, c0, OrderingKind::Hbar, sigma);
    EXPECT_LE(rep.max_abs_dev, 1e-9);
    rep = verify_ordering_theorem(ctx, c0, s0, OrderingKind::Hbar, sigma);
    EXPECT_LE(rep.max_abs_dev, 1e-9);

    // psi ⊙ psi vs chi exercises the degree-2 combinatorics
    rep = verify_ordering_theorem(ctx, sym_mul(s0, s0), c0, OrderingKind::Hbar, sigma);
    EXPECT_LE(rep.max_abs_dev, 1e-9);
    EXPECT_EQ(rep.deg_a, 2);

    // same family through the Wick route
    rep = verify_ordering_theorem(ctx, s0, c0, OrderingKind::Wick, wick);
    EXPECT_LE(rep.max_abs_dev, 1e-9);
    rep = verify_ordering_theorem(ctx, sym_mul(s0, s0), c0, OrderingKind::Wick, wick);
    EXPECT_LE(rep.max_abs_dev, 1e-9);

    // report line shape
    EXPECT_EQ(rep.to_tsv().substr(0, 15), "quantification\t");
}

TEST(OrderingTheoremTest, RandomElementsBothOrderings) {
    FockContext ctx = make_context(8);
    auto sigma = kg::sigma_pairing_form(ctx.table());
    auto wick = kg::wick_pairing_form(ctx.table());
    RandomStream rng(2025);
    for (int t = 0; t < 6; ++t) {
        Elem a = testkit::random_element<Complex>(rng, ctx.table().space(), 3, 1, true);
        Elem b = testkit::random_element<Complex>(rng, ctx.table().space(), 3, 1, true);
        OrderingReport rh = verify_ordering_theorem(ctx, a, b, OrderingKind::Hbar, sigma);
        EXPECT_LE(rh.max_abs_dev, 1e-9) << rh.to_tsv();
        OrderingReport rw = verify_ordering_theorem(ctx, a, b, OrderingKind::Wick, wick);
        EXPECT_LE(rw.max_abs_dev, 1e-9) << rw.to_tsv();
    }
}

TEST(OrderingTheoremTest, NonDefaultGeometry) {
    // kmax = 2 with off-round mass and circumference: exercises the k -> -k
    // reflection across five momentum slots and flushes out any hidden
    // L = 2 pi assumptions.
    kg::KGConfig cfg;
    cfg.mass = 1.3;
    cfg.circumference = 5.0;
    cfg.kmax = 2;
    cfg.quadrature_points = 80;
    kg::ModeTable table = kg::ModeTable::standard(cfg);
    FockContext ctx(table, 6);
    auto sigma = kg::sigma_pairing_form(table);
    auto wick = kg::wick_pairing_form(table);

    RandomStream rng(909);
    for (int t = 0; t < 3; ++t) {
        Elem a = testkit::random_element<Complex>(rng, table.space(), 2, 1, true);
        Elem b = testkit::random_element<Complex>(rng, table.space(), 2, 1, true);
        EXPECT_LE(verify_ordering_theorem(ctx, a, b, OrderingKind::Hbar, sigma).max_abs_dev,
                  1e-9);
        EXPECT_LE(verify_ordering_theorem(ctx, a, b, OrderingKind::Wick, wick).max_abs_dev,
                  1e-9);
    }
}

TEST(ThetaTest, HbarLinearity) {
    FockContext ctx = make_context(5);
    RandomStream rng(61);
    Elem a = testkit::random_element<Complex>(rng, ctx.table().space(), 2, 0, true);
    Elem ha = a.scaled(HPoly<Complex>::hbar_power(1));
    // Θ(hbar a) = -i Θ(a);  Θ_W(hbar a) = Θ_W(a)
    EXPECT_LE((theta(ctx, ha) - theta(ctx, a).scaled(Complex{0.0, -1.0})).max_abs(), 1e-12);
    EXPECT_LE((theta_wick(ctx, ha) - theta_wick(ctx, a)).max_abs(), 1e-12);
}

TEST(OrderingTheoremTest, GuardRefusesOverflow) {
    FockContext ctx = make_context(3);
    const ModeSpacePtr& sp = ctx.table().space();
    Elem s0 = Elem::generator(sp, "s0");
    Elem cube = sym_mul(sym_mul(s0, s0), s0);
    auto sigma = kg::sigma_pairing_form(ctx.table());
    EXPECT_THROW(verify_ordering_theorem(ctx, cube, cube, OrderingKind::Hbar, sigma),
                 GuardError);
}

TEST(OrderingTheoremTest, TruncationMonotonicity) {
    // raising Ncap never worsens the deviation on the previously guarded block
    auto sigma_tbl = kg::ModeTable::standard(default_cfg());
    auto sigma = kg::sigma_pairing_form(sigma_tbl);
    RandomStream rng(55);
    Elem a = testkit::random_element<Complex>(rng, sigma_tbl.space(), 2, 0, true);
    Elem b = testkit::random_element<Complex>(rng, sigma_tbl.space(), 2, 0, true);

    FockContext small(sigma_tbl, 5);
    FockContext big(sigma_tbl, 7);
    OrderingReport rs = verify_ordering_theorem(small, a, b, OrderingKind::Hbar, sigma);

    int deg = static_cast<int>(a.degree() + b.degree());
    int small_guard = small.space().guard_dimension(deg);
    FockOperator lhs = theta(big, a) * theta(big, b);
    FockOperator rhs = theta(big, star(sigma, a, b));
    double dev_big_on_small_guard = guarded_deviation(lhs, rhs, small_guard);
    EXPECT_LE(dev_big_on_small_guard, rs.max_abs_dev + 1e-12);
}

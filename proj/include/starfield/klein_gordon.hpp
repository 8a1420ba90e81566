#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "starfield/element.hpp"
#include "starfield/pairing.hpp"
#include "starfield/scalar.hpp"
#include "starfield/serialize.hpp"

namespace starfield::kg {

/// Field mass, circle circumference, wavenumber cutoff and quadrature
/// resolution for the concrete mode space.
struct KGConfig {
    double mass = 1.0;
    double circumference = 2.0 * std::numbers::pi;
    int kmax = 1;
    int quadrature_points = 64;

    int n_field_modes() const { return 2 * kmax + 1; }
    double wavenumber(int k_index) const {
        return 2.0 * std::numbers::pi * k_index / circumference;
    }

    void validate() const {
        if (!(mass > 0.0)) throw ConfigError("mass must be positive");
        if (!(circumference > 0.0)) throw ConfigError("circumference must be positive");
        if (kmax < 0) throw ConfigError("kmax must be nonnegative");
        if (quadrature_points < 4 * (2 * kmax + 1))
            throw ConfigError("quadrature_points must be at least 4*(2*kmax+1)");
    }
};

/// Dispersion relation mu(k) = sqrt(k^2 + m^2).
inline double mu(int k_index, const KGConfig& cfg) {
    if (std::abs(k_index) > cfg.kmax) throw DomainError("k_index outside [-kmax, kmax]");
    double k = cfg.wavenumber(k_index);
    return std::sqrt(k * k + cfg.mass * cfg.mass);
}

enum class Trig { Cos, Sin };

inline const char* trig_name(Trig t) { return t == Trig::Cos ? "cos" : "sin"; }

/// One classical solution psi(t,x) = trig_s(k x) * trig_t(mu(k) t) on the
/// circle.  The (k=0, sin spatial) combination is identically zero and
/// refused.
class KGMode {
public:
    KGMode(int k_index, Trig spatial, Trig temporal, const KGConfig& cfg)
        : k_index_(k_index),
          spatial_(spatial),
          temporal_(temporal),
          k_(cfg.wavenumber(k_index)),
          mu_(mu(k_index, cfg)) {
        if (k_index == 0 && spatial == Trig::Sin)
            throw DomainError("k_index 0 with sin spatial parity is identically zero");
    }

    int k_index() const { return k_index_; }
    Trig spatial() const { return spatial_; }
    Trig temporal() const { return temporal_; }
    double mu_value() const { return mu_; }

    double value(double t, double x) const { return space_part(x) * time_part(t); }
    double dt(double t, double x) const { return space_part(x) * time_deriv(t); }
    double dx(double t, double x) const { return space_deriv(x) * time_part(t); }
    double dtt(double t, double x) const {
        double tp = temporal_ == Trig::Cos ? -mu_ * mu_ * std::cos(mu_ * t)
                                           : -mu_ * mu_ * std::sin(mu_ * t);
        return space_part(x) * tp;
    }
    double dxx(double t, double x) const {
        double sp = spatial_ == Trig::Cos ? -k_ * k_ * std::cos(k_ * x)
                                          : -k_ * k_ * std::sin(k_ * x);
        return sp * time_part(t);
    }

    friend bool operator==(const KGMode& a, const KGMode& b) {
        return a.k_index_ == b.k_index_ && a.spatial_ == b.spatial_ &&
               a.temporal_ == b.temporal_;
    }

private:
    double space_part(double x) const {
        return spatial_ == Trig::Cos ? std::cos(k_ * x) : std::sin(k_ * x);
    }
    double space_deriv(double x) const {
        return spatial_ == Trig::Cos ? -k_ * std::sin(k_ * x) : k_ * std::cos(k_ * x);
    }
    double time_part(double t) const {
        return temporal_ == Trig::Cos ? std::cos(mu_ * t) : std::sin(mu_ * t);
    }
    double time_deriv(double t) const {
        return temporal_ == Trig::Cos ? -mu_ * std::sin(mu_ * t) : mu_ * std::cos(mu_ * t);
    }

    int k_index_;
    Trig spatial_;
    Trig temporal_;
    double k_;
    double mu_;
};

/// Field-equation residual dtt - dxx + m^2 psi at one sample point.
inline double kg_residual(const KGMode& m, const KGConfig& cfg, double t, double x) {
    return m.dtt(t, x) - m.dxx(t, x) + cfg.mass * cfg.mass * m.value(t, x);
}

/// Fourier coefficients over k_index in [-kmax, kmax]; slot 0 is -kmax.
/// Convention: hat f(k) = (1/sqrt(L)) * integral of exp(-ikx) f(x) dx.
using FourierVec = std::vector<Complex>;

inline Complex fourier_at(const FourierVec& f, int k_index, const KGConfig& cfg) {
    return f.at(static_cast<std::size_t>(k_index + cfg.kmax));
}

/// integral of f*g over the circle from Fourier data (exact for trig
/// polynomials): sum_k hat f(k) hat g(-k).
inline Complex fourier_product_integral(const FourierVec& f, const FourierVec& g,
                                        const KGConfig& cfg) {
    Complex acc{0.0, 0.0};
    for (int k = -cfg.kmax; k <= cfg.kmax; ++k)
        acc += fourier_at(f, k, cfg) * fourier_at(g, -k, cfg);
    return acc;
}

inline bool conjugate_symmetric(const FourierVec& f, const KGConfig& cfg, double tol = 1e-12) {
    for (int k = 0; k <= cfg.kmax; ++k)
        if (std::abs(fourier_at(f, k, cfg) - std::conj(fourier_at(f, -k, cfg))) > tol)
            return false;
    return true;
}

/// Cauchy data of a mode on the t = 0 slice, as Fourier coefficients of
/// psi(0,.) and of dpsi/dt(0,.).
struct CauchyData {
    FourierVec value_at_0;
    FourierVec tderiv_at_0;
};

namespace detail {

/// hat of a pure spatial trig mode, scaled: cos(kx) has (sqrt(L)/2) at +-k,
/// sin(kx) has -+ i sqrt(L)/2.
inline FourierVec spatial_hat(int k_index, Trig spatial, double scale, const KGConfig& cfg) {
    FourierVec f(static_cast<std::size_t>(cfg.n_field_modes()), Complex{0.0, 0.0});
    double half = 0.5 * std::sqrt(cfg.circumference) * scale;
    auto add = [&](int k, Complex v) {
        f.at(static_cast<std::size_t>(k + cfg.kmax)) += v;
    };
    if (spatial == Trig::Cos) {
        add(k_index, Complex{half, 0.0});
        add(-k_index, Complex{half, 0.0});
    } else {
        add(k_index, Complex{0.0, -half});
        add(-k_index, Complex{0.0, half});
    }
    return f;
}

}  // namespace detail

inline CauchyData cauchy_data(const KGMode& m, const KGConfig& cfg) {
    FourierVec zero(static_cast<std::size_t>(cfg.n_field_modes()), Complex{0.0, 0.0});
    if (m.temporal() == Trig::Cos) {
        // psi(0,.) = spatial part, dpsi/dt(0,.) = 0
        return {detail::spatial_hat(m.k_index(), m.spatial(), 1.0, cfg), zero};
    }
    // psi(0,.) = 0, dpsi/dt(0,.) = mu * spatial part
    return {zero, detail::spatial_hat(m.k_index(), m.spatial(), m.mu_value(), cfg)};
}

namespace detail {

/// Pairwise (cascade) summation: deterministic and accurate for the
/// quadrature sums.
inline double pairwise_sum(const std::vector<double>& xs, std::size_t lo, std::size_t hi) {
    if (hi - lo <= 4) {
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

inline double quadrature_sigma(const KGMode& psi, const KGMode& phi, const KGConfig& cfg) {
    int n = cfg.quadrature_points;
    std::vector<double> samples(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        double x = cfg.circumference * i / n;
        samples[static_cast<std::size_t>(i)] = psi.dt(0.0, x) * phi.value(0.0, x);
    }
    return pairwise_sum(samples, 0, samples.size()) * cfg.circumference / n;
}

}  // namespace detail

/// Hypersurface pairing B[psi][phi] = integral over the t=0 circle of
/// (dpsi/dt)(0,x) phi(0,x) dx, by closed-form trig integrals, cross-checked
/// against periodic trapezoid quadrature to 1e-10.
inline Complex sigma_pairing(const KGMode& psi, const KGMode& phi, const KGConfig& cfg) {
    cfg.validate();
    CauchyData cp = cauchy_data(psi, cfg), cq = cauchy_data(phi, cfg);
    Complex analytic = fourier_product_integral(cp.tderiv_at_0, cq.value_at_0, cfg);
    double quad = detail::quadrature_sigma(psi, phi, cfg);
    double tol = 1e-10 * std::max(1.0, std::abs(analytic));
    if (std::abs(analytic - Complex{quad, 0.0}) > tol)
        throw ConfigError("sigma pairing: quadrature and analytic integrals disagree");
    return analytic;
}

/// Antisymmetrized pairing: the Poisson bracket of two generators.
inline Complex poisson_pairing(const KGMode& psi, const KGMode& phi, const KGConfig& cfg) {
    return sigma_pairing(psi, phi, cfg) - sigma_pairing(phi, psi, cfg);
}

/// The Wick coefficient maps F and G of a mode:
///   F psi(k) = (1/sqrt2)(hat{dpsi/dt}(k)/mu(k) - i hat{psi}(k))
///   G psi(k) = (1/sqrt2)(hat{dpsi/dt}(k)/mu(k) + i hat{psi}(k))
struct WickCoefficients {
    FourierVec F;
    FourierVec G;
};

inline WickCoefficients wick_coefficients(const KGMode& psi, const KGConfig& cfg) {
    CauchyData cd = cauchy_data(psi, cfg);
    std::size_t n = static_cast<std::size_t>(cfg.n_field_modes());
    WickCoefficients out{FourierVec(n), FourierVec(n)};
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int k = -cfg.kmax; k <= cfg.kmax; ++k) {
        std::size_t i = static_cast<std::size_t>(k + cfg.kmax);
        Complex u = cd.tderiv_at_0[i] / mu(k, cfg);
        Complex w = cd.value_at_0[i];
        out.F[i] = inv_sqrt2 * (u - Complex{0.0, 1.0} * w);
        out.G[i] = inv_sqrt2 * (u + Complex{0.0, 1.0} * w);
    }
    return out;
}

/// Wick pairing W[psi][phi] = sum_k mu(k) conj(G psi(k)) G phi(k)
///                          = sum_k mu(k) F psi(-k) G phi(k).
/// This is the kernel that makes the normal-ordered representation a
/// star-product morphism; the Fock matrix suite certifies it.
inline Complex wick_pairing(const KGMode& psi, const KGMode& phi, const KGConfig& cfg) {
    WickCoefficients a = wick_coefficients(psi, cfg), b = wick_coefficients(phi, cfg);
    Complex acc{0.0, 0.0};
    for (int k = -cfg.kmax; k <= cfg.kmax; ++k) {
        std::size_t i = static_cast<std::size_t>(k + cfg.kmax);
        acc += mu(k, cfg) * std::conj(a.G[i]) * b.G[i];
    }
    return acc;
}

/// The standard generator table over a config: for k = 0 the two temporal
/// branches c0 = cos(mu t), s0 = sin(mu t); for each k >= 1 the four
/// spatial x temporal combinations cc<k>, cs<k>, sc<k>, ss<k>
/// (first letter spatial, second temporal).
class ModeTable {
public:
    static ModeTable standard(const KGConfig& cfg) {
        cfg.validate();
        ModeTable t;
        t.cfg_ = cfg;
        std::vector<std::string> labels;
        auto push = [&](const std::string& l, KGMode m) {
            labels.push_back(l);
            t.modes_.push_back(std::move(m));
        };
        push("c0", KGMode(0, Trig::Cos, Trig::Cos, cfg));
        push("s0", KGMode(0, Trig::Cos, Trig::Sin, cfg));
        for (int k = 1; k <= cfg.kmax; ++k) {
            push("cc" + std::to_string(k), KGMode(k, Trig::Cos, Trig::Cos, cfg));
            push("cs" + std::to_string(k), KGMode(k, Trig::Cos, Trig::Sin, cfg));
            push("sc" + std::to_string(k), KGMode(k, Trig::Sin, Trig::Cos, cfg));
            push("ss" + std::to_string(k), KGMode(k, Trig::Sin, Trig::Sin, cfg));
        }
        t.space_ = make_mode_space(labels);
        return t;
    }

    const KGConfig& config() const { return cfg_; }
    const ModeSpacePtr& space() const { return space_; }
    std::size_t size() const { return modes_.size(); }
    const KGMode& mode(std::size_t i) const { return modes_.at(i); }
    const KGMode& mode(const std::string& label) const {
        return modes_.at(space_->index_of(label));
    }

    /// Tab-separated export: label, k_index, spatial, temporal, mu.
    std::string to_tsv() const {
        std::string out = "label\tk_index\tspatial\ttemporal\tmu\n";
        for (std::size_t i = 0; i < modes_.size(); ++i) {
            const KGMode& m = modes_[i];
            out += space_->label(i) + "\t" + std::to_string(m.k_index()) + "\t" +
                   trig_name(m.spatial()) + "\t" + trig_name(m.temporal()) + "\t" +
                   starfield::detail::double_to_text(m.mu_value()) + "\n";
        }
        return out;
    }

private:
    KGConfig cfg_;
    ModeSpacePtr space_;
    std::vector<KGMode> modes_;
};

/// Pairing forms over a mode table, ready to feed the star product.
inline PairingForm<Complex> sigma_pairing_form(const ModeTable& t) {
    PairingForm<Complex> B(t.space(), "sigma");
    for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t s = 0; s < t.size(); ++s)
            B.set(r, s, sigma_pairing(t.mode(r), t.mode(s), t.config()));
    return B;
}

inline PairingForm<Complex> wick_pairing_form(const ModeTable& t) {
    PairingForm<Complex> W(t.space(), "wick");
    for (std::size_t r = 0; r < t.size(); ++r)
        for (std::size_t s = 0; s < t.size(); ++s)
            W.set(r, s, wick_pairing(t.mode(r), t.mode(s), t.config()));
    return W;
}

/// The observable functional I(Psi)(phi), expanded over labeled factors:
///   I(psi_1 ⊙ ... ⊙ psi_k)(phi)
///     = sum over subsets I of (-1)^|I| prod_{i in I} (integral psi_i dphi/dt)
///                                      prod_{j not in I} (integral dpsi_j/dt phi).
/// Input must be hbar-free; I is multiplicative on ⊙.
inline Complex eval_observable(const ModeTable& table, const AlgebraElement<Complex>& Psi,
                               const KGMode& phi, const KGConfig& cfg) {
    require_same_space(table.space(), Psi.space());
    Complex total{0.0, 0.0};
    for (const auto& [mono, h] : Psi.terms()) {
        for (const auto& [p, c] : h.coeffs())
            if (p != 0) throw DomainError("eval_observable: input has hbar terms");
        Complex coeff = h.coeff(0);

        std::vector<std::size_t> factors = mono.factor_list();
        std::size_t k = factors.size();
        Complex acc{0.0, 0.0};
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
            Complex term{1.0, 0.0};
            int bits = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const KGMode& psi_i = table.mode(factors[i]);
                if (mask >> i & 1) {
                    term *= sigma_pairing(phi, psi_i, cfg);  // integral psi_i dphi/dt
                    ++bits;
                } else {
                    term *= sigma_pairing(psi_i, phi, cfg);  // integral dpsi_i/dt phi
                }
            }
            acc += (bits % 2 == 0 ? term : -term);
        }
        total += coeff * acc;
    }
    return total;
}

}  // namespace starfield::kg

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <algorithm>
#include <map>
#include <vector>

#include "starfield/scalar.hpp"

namespace starfield::fock {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

/// Truncated bosonic Fock space over a finite mode set, in the
/// occupation-number basis.  States are all occupation vectors with total
/// occupation <= Ncap, enumerated by total occupation and then
/// lexicographically — so the states guarded at any level form a prefix.
class FockSpace {
public:
    FockSpace(int mode_count, int ncap) : mode_count_(mode_count), ncap_(ncap) {
        if (mode_count < 0 || ncap < 0) throw DomainError("invalid Fock space shape");
        std::vector<int> state(static_cast<std::size_t>(mode_count), 0);
        for (int total = 0; total <= ncap; ++total) enumerate(state, 0, total);
        for (std::size_t i = 0; i < basis_.size(); ++i) index_[basis_[i]] = static_cast<int>(i);
    }

    int mode_count() const { return mode_count_; }
    int ncap() const { return ncap_; }
    int dimension() const { return static_cast<int>(basis_.size()); }

    const std::vector<int>& state(int i) const {
        return basis_.at(static_cast<std::size_t>(i));
    }
    int occupation(int i) const {
        int s = 0;
        for (int o : state(i)) s += o;
        return s;
    }
    int index_of(const std::vector<int>& state) const {
        auto it = index_.find(state);
        return it == index_.end() ? -1 : it->second;
    }

    /// Index of state(i) with one more quantum in `mode`, or -1 if that
    /// leaves the truncated space.
    int raised(int i, int mode) const {
        std::vector<int> s = state(i);
        ++s.at(static_cast<std::size_t>(mode));
        return index_of(s);
    }
    int lowered(int i, int mode) const {
        std::vector<int> s = state(i);
        if (s.at(static_cast<std::size_t>(mode)) == 0) return -1;
        --s[static_cast<std::size_t>(mode)];
        return index_of(s);
    }

    /// Number of states trusted under a product of `formal_degree` ladder
    /// factors: occupation <= ncap - formal_degree.  They form a prefix of
    /// the basis enumeration.
    int guard_dimension(int formal_degree) const {
        if (formal_degree > ncap_) return 0;
        int g = 0;
        while (g < dimension() && occupation(g) <= ncap_ - formal_degree) ++g;
        return g;
    }

private:
    void enumerate(std::vector<int>& state, std::size_t mode, int remaining) {
        if (mode_count_ == 0) {
            if (remaining == 0 && basis_.empty()) basis_.push_back(state);
            return;
        }
        if (mode + 1 == state.size()) {
            state[mode] = remaining;
            basis_.push_back(state);
            state[mode] = 0;
            return;
        }
        for (int o = 0; o <= remaining; ++o) {
            state[mode] = o;
            enumerate(state, mode + 1, remaining - o);
        }
        state[mode] = 0;
    }

    int mode_count_;
    int ncap_;
    std::vector<std::vector<int>> basis_;
    std::map<std::vector<int>, int> index_;
};

/// Sparse complex matrix over a FockSpace basis with a formal ladder-factor
/// count used by the truncation guard.
struct FockOperator {
    SparseMatrix mat;
    int formal_degree = 0;

    static FockOperator identity(const FockSpace& F) {
        FockOperator op;
        op.mat = SparseMatrix(F.dimension(), F.dimension());
        op.mat.setIdentity();
        op.formal_degree = 0;
        return op;
    }
    static FockOperator zero(const FockSpace& F, int degree = 0) {
        FockOperator op;
        op.mat = SparseMatrix(F.dimension(), F.dimension());
        op.formal_degree = degree;
        return op;
    }

    FockOperator operator*(const FockOperator& o) const {
        FockOperator r;
        r.mat = (mat * o.mat).pruned();
        r.formal_degree = formal_degree + o.formal_degree;
        return r;
    }
    FockOperator& operator+=(const FockOperator& o) {
        mat = mat + o.mat;
        formal_degree = std::max(formal_degree, o.formal_degree);
        return *this;
    }
    FockOperator operator+(const FockOperator& o) const {
        FockOperator r = *this;
        return r += o;
    }
    FockOperator operator-(const FockOperator& o) const {
        FockOperator r = *this;
        r.mat = r.mat - o.mat;
        r.formal_degree = std::max(formal_degree, o.formal_degree);
        return r;
    }
    FockOperator scaled(Complex c) const {
        FockOperator r = *this;
        r.mat = r.mat * c;
        return r;
    }
    FockOperator adjoint() const {
        FockOperator r = *this;
        r.mat = mat.adjoint();
        return r;
    }

    Complex entry(int row, int col) const { return mat.coeff(row, col); }

    /// Max |entry| over the top-left guarded block.
    double max_abs_on_block(int block) const {
        double m = 0.0;
        for (int col = 0; col < std::min<int>(block, mat.outerSize()); ++col)
            for (SparseMatrix::InnerIterator it(mat, col); it; ++it)
                if (it.row() < block) m = std::max(m, std::abs(it.value()));
        return m;
    }
    double max_abs() const { return max_abs_on_block(mat.rows()); }

    bool is_identity(double tol = 0.0) const {
        SparseMatrix id(mat.rows(), mat.cols());
        id.setIdentity();
        SparseMatrix diff = mat - id;
        double m = 0.0;
        for (int col = 0; col < diff.outerSize(); ++col)
            for (SparseMatrix::InnerIterator it(diff, col); it; ++it)
                m = std::max(m, std::abs(it.value()));
        return m <= tol;
    }
};

inline double guarded_deviation(const FockOperator& a, const FockOperator& b, int block) {
    FockOperator d = a - b;
    return d.max_abs_on_block(block);
}

/// a^-(f): annihilation, antilinear in f, with sqrt(occupation) amplitudes.
inline FockOperator a_minus(const std::vector<Complex>& f, const FockSpace& F) {
    if (static_cast<int>(f.size()) != F.mode_count())
        throw DimensionError("mode vector length does not match the Fock space");
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int i = 0; i < F.dimension(); ++i) {
        const std::vector<int>& s = F.state(i);
        for (int m = 0; m < F.mode_count(); ++m) {
            if (s[static_cast<std::size_t>(m)] == 0) continue;
            Complex amp = std::conj(f[static_cast<std::size_t>(m)]) *
                          std::sqrt(static_cast<double>(s[static_cast<std::size_t>(m)]));
            if (amp == Complex{0.0, 0.0}) continue;
            trips.emplace_back(F.lowered(i, m), i, amp);
        }
    }
    FockOperator op = FockOperator::zero(F, 1);
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

/// a^-(f)^*: creation, linear in f, with sqrt(occupation+1) amplitudes.
/// Rows above the occupation cap are dropped (truncation; guard applies).
inline FockOperator a_minus_star(const std::vector<Complex>& f, const FockSpace& F) {
    if (static_cast<int>(f.size()) != F.mode_count())
        throw DimensionError("mode vector length does not match the Fock space");
    std::vector<Eigen::Triplet<Complex>> trips;
    for (int i = 0; i < F.dimension(); ++i) {
        const std::vector<int>& s = F.state(i);
        for (int m = 0; m < F.mode_count(); ++m) {
            int j = F.raised(i, m);
            if (j < 0) continue;
            Complex amp = f[static_cast<std::size_t>(m)] *
                          std::sqrt(static_cast<double>(s[static_cast<std::size_t>(m)] + 1));
            if (amp == Complex{0.0, 0.0}) continue;
            trips.emplace_back(j, i, amp);
        }
    }
    FockOperator op = FockOperator::zero(F, 1);
    op.mat.setFromTriplets(trips.begin(), trips.end());
    return op;
}

/// Momentum-space reflection k -> -k as a mode-index permutation, plus the
/// dispersion weights: the data the a/a† and field operators need.
struct ModeGeometry {
    std::vector<double> mu;       // mu(k) per mode slot
    std::vector<int> reflect;     // slot of -k per slot of k

    void check(const FockSpace& F) const {
        if (static_cast<int>(mu.size()) != F.mode_count() ||
            static_cast<int>(reflect.size()) != F.mode_count())
            throw DimensionError("mode geometry does not match the Fock space");
    }

    std::vector<Complex> reflect_conj(const std::vector<Complex>& f) const {
        std::vector<Complex> r(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            r[i] = std::conj(f[static_cast<std::size_t>(reflect[i])]);
        return r;
    }
    bool is_real_function(const std::vector<Complex>& f, double tol = 1e-12) const {
        for (std::size_t i = 0; i < f.size(); ++i)
            if (std::abs(f[i] - std::conj(f[static_cast<std::size_t>(reflect[i])])) > tol)
                return false;
        return true;
    }
};

/// a†(f) = a^-(sqrt(mu) f)^*,  a(f) = a^-(sqrt(mu) Cf)  with Cf(k) = conj(f(-k)).
/// Both are linear in f.
struct LadderPair {
    FockOperator a;
    FockOperator a_dagger;
};

inline LadderPair ladder(const std::vector<Complex>& f, const ModeGeometry& geo,
                         const FockSpace& F) {
    geo.check(F);
    std::vector<Complex> wf(f.size()), wcf(f.size());
    std::vector<Complex> cf = geo.reflect_conj(f);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double root = std::sqrt(geo.mu[i]);
        wf[i] = root * f[i];
        wcf[i] = root * cf[i];
    }
    return {a_minus(wcf, F), a_minus_star(wf, F)};
}

/// The commutator scalar of Eq-style [a(f), a†(g)] on the guarded subspace:
/// sum_k mu(k) f(-k) g(k).
inline Complex ladder_commutator_scalar(const std::vector<Complex>& f,
                                        const std::vector<Complex>& g,
                                        const ModeGeometry& geo) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < f.size(); ++k)
        acc += geo.mu[k] * f[static_cast<std::size_t>(geo.reflect[k])] * g[k];
    return acc;
}

/// Circle integral of f*g from Fourier data: sum_k f(k) g(-k).
inline Complex product_integral(const std::vector<Complex>& f, const std::vector<Complex>& g,
                                const ModeGeometry& geo) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < f.size(); ++k)
        acc += f[k] * g[static_cast<std::size_t>(geo.reflect[k])];
    return acc;
}

/// Field operators from the Fourier data of a real-valued function f:
///   phi_m(f) = (1/sqrt2)[a(fhat/mu) + a†(fhat/mu)]
///   pi_m(f)  = (i/sqrt2)[a†(fhat) − a(fhat)]
/// Hermitian on the guarded subspace; CCR [phi_m(f), pi_m(g)] = i (∫fg) id.
struct FieldPair {
    FockOperator phi;
    FockOperator pi;
};

inline FieldPair field_ops(const std::vector<Complex>& fhat, const ModeGeometry& geo,
                           const FockSpace& F) {
    geo.check(F);
    if (!geo.is_real_function(fhat))
        throw DomainError("field_ops requires conjugate-symmetric (real) Fourier data");

    std::vector<Complex> over_mu(fhat.size());
    for (std::size_t i = 0; i < fhat.size(); ++i) over_mu[i] = fhat[i] / geo.mu[i];

    LadderPair lp_over = ladder(over_mu, geo, F);
    LadderPair lp = ladder(fhat, geo, F);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    FieldPair out;
    out.phi = (lp_over.a + lp_over.a_dagger).scaled(inv_sqrt2);
    out.pi = (lp.a_dagger - lp.a).scaled(Complex{0.0, inv_sqrt2});
    out.phi.formal_degree = 1;
    out.pi.formal_degree = 1;
    return out;
}

}  // namespace starfield::fock

#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "starfield/scalar.hpp"

namespace starfield {

/// Sparse polynomial in the formal deformation parameter hbar.
/// Canonical: no zero coefficients are ever stored, so equal polynomials
/// have identical storage.
template <class S>
class HPoly {
public:
    using Traits = ScalarTraits<S>;

    HPoly() = default;
    static HPoly constant(S c) {
        HPoly p;
        p.set(0, std::move(c));
        return p;
    }
    static HPoly hbar_power(std::uint32_t p, S c = Traits::one()) {
        HPoly h;
        h.set(p, std::move(c));
        return h;
    }

    bool is_zero() const { return coeffs_.empty(); }
    std::uint32_t degree() const { return coeffs_.empty() ? 0 : coeffs_.rbegin()->first; }

    S coeff(std::uint32_t p) const {
        auto it = coeffs_.find(p);
        return it == coeffs_.end() ? Traits::zero() : it->second;
    }

    void set(std::uint32_t p, S c) {
        c = Traits::canon(std::move(c));
        if (Traits::is_zero(c))
            coeffs_.erase(p);
        else
            coeffs_[p] = std::move(c);
    }

    void add(std::uint32_t p, const S& c) { set(p, coeff(p) + c); }

    const std::map<std::uint32_t, S>& coeffs() const { return coeffs_; }

    HPoly& operator+=(const HPoly& o) {
        for (const auto& [p, c] : o.coeffs_) add(p, c);
        return *this;
    }
    HPoly& operator-=(const HPoly& o) {
        for (const auto& [p, c] : o.coeffs_) add(p, -c);
        return *this;
    }
    friend HPoly operator+(HPoly a, const HPoly& b) { return a += b; }
    friend HPoly operator-(HPoly a, const HPoly& b) { return a -= b; }
    friend HPoly operator-(const HPoly& a) {
        HPoly r;
        for (const auto& [p, c] : a.coeffs_) r.set(p, -c);
        return r;
    }

    friend HPoly operator*(const HPoly& a, const HPoly& b) {
        HPoly r;
        for (const auto& [pa, ca] : a.coeffs_)
            for (const auto& [pb, cb] : b.coeffs_) r.add(pa + pb, ca * cb);
        return r;
    }

    HPoly scaled(const S& s) const {
        HPoly r;
        for (const auto& [p, c] : coeffs_) r.set(p, c * s);
        return r;
    }

    /// Multiply by hbar^k.
    HPoly shifted(std::uint32_t k) const {
        HPoly r;
        for (const auto& [p, c] : coeffs_) r.coeffs_.emplace(p + k, c);
        return r;
    }

    /// Exact division by hbar; requires coeff(0) == 0.
    HPoly hbar_quotient() const {
        HPoly r;
        for (const auto& [p, c] : coeffs_) {
            if (p == 0) throw InternalError("HPoly not divisible by hbar");
            r.coeffs_.emplace(p - 1, c);
        }
        return r;
    }

    /// The hbar = 0 projection.
    HPoly truncate_to_constant() const {
        HPoly r;
        auto it = coeffs_.find(0);
        if (it != coeffs_.end()) r.coeffs_.emplace(0, it->second);
        return r;
    }

    /// Evaluate at hbar = z (used for matrix representations).
    Complex eval_at(Complex z) const {
        Complex acc{0.0, 0.0};
        for (const auto& [p, c] : coeffs_) {
            Complex t = Traits::to_complex(c);
            for (std::uint32_t j = 0; j < p; ++j) t *= z;
            acc += t;
        }
        return acc;
    }

    friend bool operator==(const HPoly& a, const HPoly& b) { return a.coeffs_ == b.coeffs_; }
    friend bool operator!=(const HPoly& a, const HPoly& b) { return !(a == b); }

private:
    std::map<std::uint32_t, S> coeffs_;
};

}  // namespace starfield

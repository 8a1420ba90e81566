#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "starfield/errors.hpp"

namespace starfield {

/// The finite generator basis: n distinct named modes.
class ModeSpace {
public:
    explicit ModeSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            const std::string& l = labels_[i];
            if (l.empty() || l == "hbar") throw DomainError("invalid mode label '" + l + "'");
            if (!index_.emplace(l, i).second)
                throw DomainError("duplicate mode label '" + l + "'");
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_.at(i); }

    std::size_t index_of(const std::string& label) const {
        auto it = index_.find(label);
        if (it == index_.end()) throw DomainError("unknown mode label '" + label + "'");
        return it->second;
    }
    bool contains(const std::string& label) const { return index_.count(label) != 0; }

    friend bool operator==(const ModeSpace& a, const ModeSpace& b) {
        return a.labels_ == b.labels_;
    }

private:
    std::vector<std::string> labels_;
    std::map<std::string, std::size_t> index_;
};

using ModeSpacePtr = std::shared_ptr<const ModeSpace>;

inline ModeSpacePtr make_mode_space(std::vector<std::string> labels) {
    return std::make_shared<const ModeSpace>(std::move(labels));
}

inline void require_same_space(const ModeSpacePtr& a, const ModeSpacePtr& b) {
    if (a == b) return;
    if (!a || !b || !(*a == *b)) throw DimensionError("operands live over different mode spaces");
}

/// Exponent vector over a ModeSpace; the empty product (all zeros) is the
/// algebra unit.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t n_modes) : exp_(n_modes, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : exp_(std::move(exps)) {}

    static Monomial unit(std::size_t n_modes) { return Monomial(n_modes); }
    static Monomial generator(std::size_t n_modes, std::size_t mode) {
        Monomial m(n_modes);
        m.exp_.at(mode) = 1;
        return m;
    }

    std::size_t n_modes() const { return exp_.size(); }
    std::uint32_t exponent(std::size_t mode) const { return exp_.at(mode); }
    const std::vector<std::uint32_t>& exponents() const { return exp_; }

    std::uint32_t degree() const {
        return std::accumulate(exp_.begin(), exp_.end(), std::uint32_t{0});
    }
    bool is_unit() const { return degree() == 0; }

    Monomial times(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < exp_.size(); ++i) r.exp_[i] += o.exp_[i];
        return r;
    }

    /// One step of the contraction derivation: exponent on `mode` drops by 1.
    /// Caller owns the multiplicity factor.
    Monomial lowered(std::size_t mode) const {
        Monomial r = *this;
        r.exp_.at(mode) -= 1;
        return r;
    }

    /// Positions of the monomial as a labeled factor list: u^2 v -> [u,u,v].
    std::vector<std::size_t> factor_list() const {
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < exp_.size(); ++i)
            for (std::uint32_t j = 0; j < exp_[i]; ++j) f.push_back(i);
        return f;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

private:
    std::vector<std::uint32_t> exp_;
};

/// Graded-lexicographic term order: by total degree, then lexicographic on
/// the exponent vector.  Fixes the canonical serialization order.
struct MonomialGradedLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::uint32_t da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        return a.exponents() < b.exponents();
    }
};

}  // namespace starfield

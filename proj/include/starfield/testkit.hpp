#pragma once

#include <cstdint>
#include <vector>

#include "starfield/pairing.hpp"
#include "starfield/star.hpp"

namespace starfield::testkit {

/// Deterministic 64-bit generator (xorshift64* — Vigna's xorshift with a
/// multiplicative finalizer).  Same seed, same stream, on every platform;
/// split() derives an independent substream from a tag via a splitmix64
/// finalizer, so suites can fan out reproducibly.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545f4914f6cdd1dULL;
    }

    /// Uniform in [0, m).
    std::uint64_t below(std::uint64_t m) { return m <= 1 ? 0 : next_u64() % m; }

    /// Nonzero integer in [-9, 9].
    long long small_nonzero() {
        std::uint64_t r = below(18);
        return r < 9 ? static_cast<long long>(r) - 9 : static_cast<long long>(r) - 8;
    }
    /// Denominator in [1, 9].
    long long small_den() { return static_cast<long long>(below(9)) + 1; }

    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    RandomStream split(std::uint64_t tag) {
        std::uint64_t z = state_ + 0x9e3779b97f4a7c15ULL * (tag + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z = z ^ (z >> 31);
        return RandomStream(z);
    }

private:
    std::uint64_t state_;
};

template <class S>
S random_rational_scalar(RandomStream& rng) {
    return ScalarTraits<S>::from_ratio(rng.small_nonzero(), rng.small_den());
}

template <class S>
S random_complex_rational_scalar(RandomStream& rng) {
    S re = ScalarTraits<S>::from_ratio(rng.small_nonzero(), rng.small_den());
    S im = ScalarTraits<S>::from_ratio(rng.small_nonzero(), rng.small_den());
    if constexpr (ScalarTraits<S>::exact)
        return S(re.re, im.re);
    else
        return S(re.real(), im.real());
}

/// Random sparse element: up to five terms, exact-rational coefficients with
/// numerators/denominators in [-9,9]\{0}, total degree and hbar degree
/// bounded as requested.
template <class S>
AlgebraElement<S> random_element(RandomStream& rng, const ModeSpacePtr& space,
                                 std::uint32_t max_degree, std::uint32_t max_hbar_degree,
                                 bool complex_coeffs = false) {
    AlgebraElement<S> e(space);
    std::uint64_t n_terms = 1 + rng.below(5);
    for (std::uint64_t t = 0; t < n_terms; ++t) {
        // keep sampled coefficients intact: retry on key collisions, then skip
        for (int attempt = 0; attempt < 8; ++attempt) {
            std::uint32_t deg = static_cast<std::uint32_t>(rng.below(max_degree + 1));
            std::vector<std::uint32_t> exps(space->size(), 0);
            if (!space->size()) deg = 0;
            for (std::uint32_t d = 0; d < deg; ++d) ++exps[rng.below(space->size())];
            std::uint32_t hpow = static_cast<std::uint32_t>(rng.below(max_hbar_degree + 1));
            Monomial m{std::move(exps)};
            if (!ScalarTraits<S>::is_zero(e.coefficient(m).coeff(hpow))) continue;
            S c = complex_coeffs ? random_complex_rational_scalar<S>(rng)
                                 : random_rational_scalar<S>(rng);
            e.add_term(m, HPoly<S>::hbar_power(hpow, c));
            break;
        }
    }
    return e;
}

template <class S>
PairingForm<S> random_pairing(RandomStream& rng, const ModeSpacePtr& space,
                              bool complex_entries = false) {
    PairingForm<S> B(space, "random");
    for (std::size_t r = 0; r < space->size(); ++r)
        for (std::size_t s = 0; s < space->size(); ++s)
            B.set(r, s, complex_entries ? random_complex_rational_scalar<S>(rng)
                                        : random_rational_scalar<S>(rng));
    return B;
}

/// Ground-truth star product on a monomial pair: expand both monomials into
/// labeled factor lists and enumerate every (subset J, injection σ) by brute
/// force, with no algebraic shortcuts.  Factorial-time; capped at total
/// degree 8.  Exists only to certify the optimized kernels.
template <class S>
AlgebraElement<S> injection_oracle(const PairingForm<S>& B, const Monomial& ma,
                                   const Monomial& mb, const ModeSpacePtr& space) {
    using Traits = ScalarTraits<S>;
    if (ma.degree() + mb.degree() > 8)
        throw DomainError("injection oracle capped at total degree 8");

    std::vector<std::size_t> fa = ma.factor_list();
    std::vector<std::size_t> fb = mb.factor_list();
    AlgebraElement<S> out(space);

    std::uint64_t subsets = std::uint64_t{1} << fa.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
        std::vector<std::size_t> chosen;
        for (std::size_t i = 0; i < fa.size(); ++i)
            if (mask >> i & 1) chosen.push_back(i);
        if (chosen.size() > fb.size()) continue;

        std::vector<bool> used(fb.size(), false);
        std::vector<std::size_t> target(chosen.size(), 0);

        auto rec = [&](auto&& self, std::size_t depth) -> void {
            if (depth == chosen.size()) {
                S w = Traits::one();
                for (std::size_t d = 0; d < chosen.size(); ++d)
                    w = w * B.at(fa[chosen[d]], fb[target[d]]);
                std::vector<std::uint32_t> exps(space->size(), 0);
                for (std::size_t i = 0; i < fa.size(); ++i)
                    if (!(mask >> i & 1)) ++exps[fa[i]];
                for (std::size_t j = 0; j < fb.size(); ++j)
                    if (!used[j]) ++exps[fb[j]];
                out.add_term(Monomial(std::move(exps)),
                             HPoly<S>::hbar_power(static_cast<std::uint32_t>(chosen.size()), w));
                return;
            }
            for (std::size_t j = 0; j < fb.size(); ++j) {
                if (used[j]) continue;
                used[j] = true;
                target[depth] = j;
                self(self, depth + 1);
                used[j] = false;
            }
        };
        rec(rec, 0);
    }
    return out;
}

}  // namespace starfield::testkit

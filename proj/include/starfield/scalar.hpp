#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

#include "starfield/errors.hpp"

namespace starfield {

using BigRational = boost::multiprecision::cpp_rational;
using Complex = std::complex<double>;

/// Exact complex scalar: Gaussian rational (rational real + imaginary part).
struct GaussianRational {
    BigRational re;
    BigRational im;

    GaussianRational() : re(0), im(0) {}
    GaussianRational(long long n) : re(n), im(0) {}  // NOLINT: implicit by design
    GaussianRational(BigRational r) : re(std::move(r)), im(0) {}
    GaussianRational(BigRational r, BigRational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational ratio(long long num, long long den) {
        return GaussianRational(BigRational(num, den));
    }
    static GaussianRational i() { return GaussianRational(BigRational(0), BigRational(1)); }

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    GaussianRational conj() const { return {re, -im}; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
        BigRational n = b.re * b.re + b.im * b.im;
        if (n == 0) throw DomainError("division by zero GaussianRational");
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    GaussianRational& operator+=(const GaussianRational& b) { return *this = *this + b; }
    GaussianRational& operator-=(const GaussianRational& b) { return *this = *this - b; }
    GaussianRational& operator*=(const GaussianRational& b) { return *this = *this * b; }
    GaussianRational& operator/=(const GaussianRational& b) { return *this = *this / b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) {
        return !(a == b);
    }
};

namespace detail {

/// Shortest round-tripping decimal form of a double.
inline std::string double_to_text(double x) {
    if (x == 0.0) x = 0.0;  // flush -0.0
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

inline double double_from_text(const char* first, const char* last, const char** end) {
    double v = 0.0;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{}) throw DomainError("bad floating-point literal");
    *end = res.ptr;
    return v;
}

}  // namespace detail

/// Uniform interface over the two scalar backends.  The algebra layer only
/// talks to scalars through this.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<GaussianRational> {
    static constexpr bool exact = true;

    static GaussianRational zero() { return {}; }
    static GaussianRational one() { return GaussianRational(1); }
    static GaussianRational from_int(long long n) { return GaussianRational(n); }
    static GaussianRational from_ratio(long long n, long long d) {
        return GaussianRational::ratio(n, d);
    }

    static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
    static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
    static GaussianRational canon(GaussianRational x) { return x; }

    static double abs(const GaussianRational& x) {
        return std::hypot(static_cast<double>(x.re), static_cast<double>(x.im));
    }
    static Complex to_complex(const GaussianRational& x) {
        return {static_cast<double>(x.re), static_cast<double>(x.im)};
    }

    static std::string to_text(const GaussianRational& x) {
        auto rat = [](const BigRational& r) { return r.str(); };
        if (x.im == 0) return rat(x.re);
        if (x.re == 0) return rat(x.im) + "i";
        std::string s = "(" + rat(x.re);
        if (x.im > 0) s += "+";
        return s + rat(x.im) + "i)";
    }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;

    static Complex zero() { return {0.0, 0.0}; }
    static Complex one() { return {1.0, 0.0}; }
    static Complex from_int(long long n) { return {static_cast<double>(n), 0.0}; }
    static Complex from_ratio(long long n, long long d) {
        return {static_cast<double>(n) / static_cast<double>(d), 0.0};
    }

    static bool is_zero(const Complex& x) { return x.real() == 0.0 && x.imag() == 0.0; }
    static Complex conj(const Complex& x) { return std::conj(x); }
    static Complex canon(Complex x) {
        // Normalize signed zeros so canonical forms are unique.
        double r = x.real() == 0.0 ? 0.0 : x.real();
        double i = x.imag() == 0.0 ? 0.0 : x.imag();
        return {r, i};
    }

    static double abs(const Complex& x) { return std::abs(x); }
    static Complex to_complex(const Complex& x) { return x; }

    static std::string to_text(const Complex& x) {
        if (x.imag() == 0.0) return detail::double_to_text(x.real());
        if (x.real() == 0.0) return detail::double_to_text(x.imag()) + "i";
        std::string s = "(" + detail::double_to_text(x.real());
        if (!std::signbit(x.imag())) s += "+";
        return s + detail::double_to_text(x.imag()) + "i)";
    }
};

}  // namespace starfield

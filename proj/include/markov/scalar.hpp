#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <cmath>
#include <stdexcept>
#include <string>

namespace markov {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

struct PrecisionExhausted : std::runtime_error {
    PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};
struct NotLoxodromic : std::runtime_error {
    NotLoxodromic(const std::string& what) : std::runtime_error(what) {}
};
struct NotRational : std::runtime_error {
    NotRational(const std::string& what) : std::runtime_error(what) {}
};
struct SingularPoint : std::runtime_error {
    SingularPoint(const std::string& what) : std::runtime_error(what) {}
};
struct NotFixed : std::runtime_error {
    NotFixed(const std::string& what) : std::runtime_error(what) {}
};

/// Minimal complex type over a pluggable real scalar (double or mpfr).
template <typename T>
struct Cplx {
    T re{}, im{};

    Cplx() = default;
    Cplx(T r) : re(std::move(r)) { im = T(0); }
    Cplx(T r, T i) : re(std::move(r)), im(std::move(i)) {}

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator-(const Cplx& a) { return {-a.re, -a.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        T n = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
    }
    Cplx& operator+=(const Cplx& o) { *this = *this + o; return *this; }
    Cplx& operator-=(const Cplx& o) { *this = *this - o; return *this; }
    Cplx& operator*=(const Cplx& o) { *this = *this * o; return *this; }

    T norm2() const { return re * re + im * im; }
};

template <typename T>
T abs(const Cplx<T>& z) {
    using std::sqrt;
    using boost::multiprecision::sqrt;
    return sqrt(z.norm2());
}

using ComplexReal = Cplx<Real>;

/// RAII guard for the global mpfr default precision (decimal digits).
struct ScopedPrecision {
    unsigned saved;
    explicit ScopedPrecision(unsigned digits) : saved(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~ScopedPrecision() { Real::default_precision(saved); }
};

inline Real to_real(const Rational& q) {
    return Real(numerator(q)) / Real(denominator(q));
}

inline Rational parse_rational(const std::string& s) {
    return Rational(s);
}

/// p-adic valuation of a nonzero rational; throws on zero.
inline long padic_valuation(const Rational& q, const Int& p) {
    if (q == 0) throw std::invalid_argument("padic_valuation of zero");
    long v = 0;
    Int n = numerator(q), d = denominator(q);
    while (n % p == 0) { n /= p; ++v; }
    while (d % p == 0) { d /= p; --v; }
    return v;
}

}  // namespace markov

#pragma once

#include <markov/scalar.hpp>

#include <mpfr.h>

namespace markov {

namespace detail {
inline mpfr_ptr raw(Real& x) { return x.backend().data(); }
inline mpfr_srcptr raw(const Real& x) { return x.backend().data(); }
}  // namespace detail

/// Closed interval [lo, hi] with outward-rounded mpfr endpoints at the
/// current working precision.
struct Iv {
    Real lo, hi;

    Iv() : lo(0), hi(0) {}
    Iv(int v) : lo(v), hi(v) {}
    Iv(double v) : lo(v), hi(v) {}
    Iv(const Real& v) : lo(v), hi(v) {}
    Iv(Real l, Real h) : lo(std::move(l)), hi(std::move(h)) {}

    static Iv of(double l, double h) { return {Real(l), Real(h)}; }
    static Iv from_rational(const Rational& q) {
        Iv r;
        mpfr_set_q(detail::raw(r.lo), q.backend().data(), MPFR_RNDD);
        mpfr_set_q(detail::raw(r.hi), q.backend().data(), MPFR_RNDU);
        return r;
    }

    bool valid() const { return lo <= hi; }
    Real width() const {
        Real w;
        mpfr_sub(detail::raw(w), detail::raw(hi), detail::raw(lo), MPFR_RNDU);
        return w;
    }
    double mid() const { return ((lo + hi) / 2).convert_to<double>(); }
    /// Full-precision midpoint; guaranteed to lie inside the interval.
    Real mid_real() const { return Real((lo + hi) / 2); }
    bool contains(const Real& v) const { return lo <= v && v <= hi; }
    bool contains(double v) const { return lo <= v && v <= hi; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }
    bool contains(const Iv& o) const { return lo <= o.lo && o.hi <= hi; }
    bool strictly_contains(const Iv& o) const { return lo < o.lo && o.hi < hi; }
    bool intersects(const Iv& o) const { return lo <= o.hi && o.lo <= hi; }

    Iv inflated(double factor) const {
        Real c = (lo + hi) / 2, r = (hi - lo) / 2 * factor;
        return {Real(c - r), Real(c + r)};
    }

    friend Iv operator+(const Iv& a, const Iv& b) {
        Iv r;
        mpfr_add(detail::raw(r.lo), detail::raw(a.lo), detail::raw(b.lo), MPFR_RNDD);
        mpfr_add(detail::raw(r.hi), detail::raw(a.hi), detail::raw(b.hi), MPFR_RNDU);
        return r;
    }
    friend Iv operator-(const Iv& a, const Iv& b) {
        Iv r;
        mpfr_sub(detail::raw(r.lo), detail::raw(a.lo), detail::raw(b.hi), MPFR_RNDD);
        mpfr_sub(detail::raw(r.hi), detail::raw(a.hi), detail::raw(b.lo), MPFR_RNDU);
        return r;
    }
    friend Iv operator-(const Iv& a) { return {Real(-a.hi), Real(-a.lo)}; }
    friend Iv operator*(const Iv& a, const Iv& b) {
        Iv r;
        Real t(0);
        bool first = true;
        for (const Real* x : {&a.lo, &a.hi})
            for (const Real* y : {&b.lo, &b.hi}) {
                mpfr_mul(detail::raw(t), detail::raw(*x), detail::raw(*y), MPFR_RNDD);
                if (first || t < r.lo) r.lo = t;
                mpfr_mul(detail::raw(t), detail::raw(*x), detail::raw(*y), MPFR_RNDU);
                if (first || t > r.hi) r.hi = t;
                first = false;
            }
        return r;
    }
    /// Division; the divisor must not contain zero.
    friend Iv operator/(const Iv& a, const Iv& b) {
        if (b.lo <= 0 && 0 <= b.hi) throw std::domain_error("interval division by zero");
        Iv r;
        Real t(0);
        bool first = true;
        for (const Real* x : {&a.lo, &a.hi})
            for (const Real* y : {&b.lo, &b.hi}) {
                mpfr_div(detail::raw(t), detail::raw(*x), detail::raw(*y), MPFR_RNDD);
                if (first || t < r.lo) r.lo = t;
                mpfr_div(detail::raw(t), detail::raw(*x), detail::raw(*y), MPFR_RNDU);
                if (first || t > r.hi) r.hi = t;
                first = false;
            }
        return r;
    }
    Iv& operator+=(const Iv& o) { return *this = *this + o; }
    Iv& operator-=(const Iv& o) { return *this = *this - o; }
    Iv& operator*=(const Iv& o) { return *this = *this * o; }
};

inline Iv intersect(const Iv& a, const Iv& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};  // may be invalid
}

inline Iv hull(const Iv& a, const Iv& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

inline Iv abs_iv(const Iv& a) {
    if (a.lo >= 0) return a;
    if (a.hi <= 0) return -a;
    return {Real(0), std::max(Real(-a.lo), a.hi)};
}

/// Square root of a nonnegative interval (lo clamped to 0).
inline Iv sqrt_iv(const Iv& a) {
    Iv r;
    Real lo = a.lo < 0 ? Real(0) : a.lo;
    mpfr_sqrt(detail::raw(r.lo), detail::raw(lo), MPFR_RNDD);
    mpfr_sqrt(detail::raw(r.hi), detail::raw(a.hi), MPFR_RNDU);
    return r;
}

}  // namespace markov

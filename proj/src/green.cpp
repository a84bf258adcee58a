#include <markov/green.hpp>

#include <mpfr.h>

#include <algorithm>
#include <set>
#include <tuple>

namespace markov {

namespace {

// working precision in decimal digits for n_max iterations of a word with
// log2(lambda1) = log2lam: the iterate norms grow like exp(C lambda1^n)
unsigned digits_for(double log2lam, unsigned n_max) {
    double bits = static_cast<double>(n_max) * std::max(log2lam, 1.0) + 64.0;
    return static_cast<unsigned>(bits * 0.30103) + 8;
}

void check_finite(const Real& x) {
    if (mpfr_inf_p(x.backend().data()) || mpfr_nan_p(x.backend().data()))
        throw PrecisionExhausted("iterate norm overflowed the float exponent range");
}

Real logplus_norm(const Point3<Real>& p) {
    Real n = arch_norm(p);
    check_finite(n);
    return n > 1 ? Real(log(n)) : Real(0);
}

GreenEstimate finish(GreenEstimate est, double tol) {
    est.certified_positive = est.cauchy_gap < tol && est.value > est.cauchy_gap;
    return est;
}

GreenEstimate arch_green(const Word& w, Point3<Real> q, const Real& lam, double tol,
                         unsigned n_max) {
    // iterate norms behave like exp(C lambda1^n); give mpfr the widest
    // exponent range so convergence wins the race against overflow
    static const bool wide_exponents = [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        return true;
    }();
    (void)wide_exponents;
    GreenEstimate est;
    Real lam_pow = 1;
    Real prev = logplus_norm(q);
    est.value = prev;
    est.cauchy_gap = prev + 1;  // no gap yet
    for (unsigned n = 1; n <= n_max; ++n) {
        q = apply(w, q);
        lam_pow *= lam;
        Real a = logplus_norm(q) / lam_pow;
        est.cauchy_gap = abs(a - prev);
        est.value = a;
        est.n_used = n;
        prev = a;
        if (est.cauchy_gap < tol) break;
    }
    return finish(est, tol);
}

long padic_min_valuation(const RationalPoint& q, const Int& p) {
    // min v_p over nonzero coordinates; LONG_MAX if all are zero
    long v = std::numeric_limits<long>::max();
    for (const Rational* c : {&q.x, &q.y, &q.z})
        if (*c != 0) v = std::min(v, padic_valuation(*c, p));
    return v;
}

bool padic_integral(const RationalPoint& q, const Int& p) {
    return denominator(q.x) % p != 0 && denominator(q.y) % p != 0 && denominator(q.z) % p != 0;
}

std::size_t bitsize(const RationalPoint& q) {
    std::size_t s = 0;
    for (const Rational* c : {&q.x, &q.y, &q.z}) {
        Int n = numerator(*c), d = denominator(*c);
        if (n != 0) s += msb(abs(n));
        s += msb(d);
    }
    return s;
}

GreenEstimate padic_green(const Word& w, RationalPoint q, const Int& p, const Real& lam,
                          double tol, unsigned n_max) {
    if (padic_integral(q, p)) return {Real(0), 1, Real(0), false};  // exact

    Real logp = log(Real(p));
    auto logplus = [&](const RationalPoint& r) {
        long v = padic_min_valuation(r, p);
        return v < 0 ? Real(-v) * logp : Real(0);
    };

    std::set<std::tuple<Rational, Rational, Rational>> seen;
    GreenEstimate est;
    Real lam_pow = 1;
    Real prev = logplus(q);
    est.value = prev;
    est.cauchy_gap = prev + 1;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (!seen.insert({q.x, q.y, q.z}).second) {
            // periodic orbit: norms are bounded, the limit is exactly 0
            return {Real(0), n, Real(0), false};
        }
        q = apply(w, q);
        if (bitsize(q) > 4000000)
            throw PrecisionExhausted("p-adic iterate exceeded the bitsize budget");
        lam_pow *= lam;
        Real a = logplus(q) / lam_pow;
        est.cauchy_gap = abs(a - prev);
        est.value = a;
        est.n_used = n;
        prev = a;
        if (est.cauchy_gap < tol) break;
    }
    return finish(est, tol);
}

Point3<Real> to_real_point(const RationalPoint& p) {
    return {to_real(p.x), to_real(p.y), to_real(p.z), to_real(p.D)};
}

}  // namespace

Real local_abs(const Rational& q, const Place& v) {
    if (v.archimedean) return to_real(q < 0 ? Rational(-q) : q);
    if (q == 0) return Real(0);
    long val = padic_valuation(q, v.p);
    Real pr(v.p);
    return val >= 0 ? Real(1 / pow(pr, val)) : Real(pow(pr, -val));
}

Real local_norm(const RationalPoint& p, const Place& v) {
    Real n = local_abs(p.x, v);
    Real t = local_abs(p.y, v);
    if (t > n) n = t;
    t = local_abs(p.z, v);
    if (t > n) n = t;
    return n;
}

GreenEstimate green_plus(const Word& w, const RationalPoint& p, const Place& v, double tol,
                         unsigned n_max) {
    if (classify(w) != WordClass::Loxodromic)
        throw NotLoxodromic("green function needs a loxodromic word");
    auto deg = dynamical_degree(w);
    double log2lam = std::log2(deg.lambda1_double());
    ScopedPrecision scope(digits_for(log2lam, n_max));
    Real lam = deg.lambda1.to_real(static_cast<unsigned>(n_max * log2lam) + 64);
    if (v.archimedean) return arch_green(w, to_real_point(p), lam, tol, n_max);
    return padic_green(w, p, v.p, lam, tol, n_max);
}

GreenEstimate green_minus(const Word& w, const RationalPoint& p, const Place& v, double tol,
                          unsigned n_max) {
    return green_plus(w.inverse(), p, v, tol, n_max);
}

GreenEstimate green_plus(const Word& w, const Point3<double>& p, double tol, unsigned n_max) {
    RationalPoint q{Rational(p.x), Rational(p.y), Rational(p.z), Rational(p.D)};
    return green_plus(w, q, Place::arch(), tol, n_max);
}

GreenEstimate green_minus(const Word& w, const Point3<double>& p, double tol, unsigned n_max) {
    return green_plus(w.inverse(), p, tol, n_max);
}

Real functional_equation_residual(const Word& w, const RationalPoint& p, const Place& v,
                                  double tol) {
    auto deg = dynamical_degree(w);
    Real lam = deg.lambda1.to_real(256);
    // each estimate carries error of order its own stop gap; shrink the
    // internal tolerance so the residual honors the requested one
    double inner = tol / (2.0 * (deg.lambda1_double() + 1.0));
    Real lhs = green_plus(w, apply(w, p), v, inner).value;
    Real rhs = lam * green_plus(w, p, v, inner).value;
    return abs(lhs - rhs);
}

OrbitClass bounded_orbit_test(const Word& w, const RationalPoint& p, const Place& v, double tol,
                              unsigned n_max) {
    GreenEstimate g = green_plus(w, p, v, tol, n_max);
    if (g.certified_positive && g.value > tol) return OrbitClass::Escaping;

    const double escape_radius = 1e8;
    bool stayed = true;
    if (v.archimedean) {
        auto deg = dynamical_degree(w);
        ScopedPrecision scope(digits_for(std::log2(deg.lambda1_double()), n_max));
        Point3<Real> q = to_real_point(p);
        for (unsigned n = 0; n < n_max; ++n) {
            q = apply(w, q);
            Real nr = arch_norm(q);
            check_finite(nr);
            if (nr > escape_radius) {
                stayed = false;
                break;
            }
        }
    } else {
        if (padic_integral(p, v.p)) return OrbitClass::Bounded;
        RationalPoint q = p;
        for (unsigned n = 0; n < n_max && stayed; ++n) {
            q = apply(w, q);
            if (bitsize(q) > 4000000) {
                stayed = false;
                break;
            }
            long val = padic_min_valuation(q, v.p);
            if (val != std::numeric_limits<long>::max() &&
                pow(Real(v.p), val < 0 ? -val : 0) > escape_radius)
                stayed = false;
        }
    }
    if (stayed && g.value < tol) return OrbitClass::Bounded;
    return OrbitClass::Undecided;
}

OrbitClass bounded_orbit_test(const Word& w, const Point3<double>& p, double tol, unsigned n_max) {
    RationalPoint q{Rational(p.x), Rational(p.y), Rational(p.z), Rational(p.D)};
    return bounded_orbit_test(w, q, Place::arch(), tol, n_max);
}

std::vector<Int> prime_factors(Int n) {
    std::vector<Int> fs;
    if (n < 0) n = -n;
    for (Int f = 2; f * f <= n; f += (f == 2 ? 1 : 2))
        if (n % f == 0) {
            fs.push_back(f);
            while (n % f == 0) n /= f;
        }
    if (n > 1) fs.push_back(n);
    return fs;
}

HeightEstimate height(const Word& w, const RationalPoint& p, double tol, unsigned n_max) {
    std::set<Int> primes;
    for (const Rational* c : {&p.x, &p.y, &p.z, &p.D})
        for (const Int& q : prime_factors(denominator(*c))) primes.insert(q);

    std::vector<Place> places{Place::arch()};
    for (const Int& q : primes) places.push_back(Place::finite(q));

    HeightEstimate h;
    h.value = 0;
    for (const Place& v : places) {
        PlaceContribution c{v, green_plus(w, p, v, tol, n_max).value,
                            green_minus(w, p, v, tol, n_max).value};
        h.value += (c.g_plus + c.g_minus) / 2;
        h.per_place.push_back(std::move(c));
    }
    return h;
}

Real naive_weil_height(const RationalPoint& p) {
    Int l = 1;
    for (const Rational* c : {&p.x, &p.y, &p.z}) l = l / gcd(l, denominator(*c)) * denominator(*c);
    Int a = numerator(Rational(p.x * l)), b = numerator(Rational(p.y * l)),
        c = numerator(Rational(p.z * l)), d = l;
    Int g = gcd(gcd(abs(a), abs(b)), gcd(abs(c), d));
    Int m = d / g;
    for (Int t : {Int(abs(a) / g), Int(abs(b) / g), Int(abs(c) / g)})
        if (t > m) m = t;
    return 1 + log(Real(m));
}

}  // namespace markov

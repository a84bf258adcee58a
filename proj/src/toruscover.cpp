#include <markov/toruscover.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace markov {

namespace {

ComplexReal cinv(const ComplexReal& z) {
    Real n = z.norm2();
    return {z.re / n, -z.im / n};
}

ComplexReal cpow(ComplexReal z, const Int& k) {
    long e = k.convert_to<long>();
    if (e < 0) {
        z = cinv(z);
        e = -e;
    }
    ComplexReal r{Real(1), Real(0)};
    while (e) {
        if (e & 1) r *= z;
        z *= z;
        e >>= 1;
    }
    return r;
}

Int lcm_int(const Int& a, const Int& b) {
    return a / gcd(a, b) * b;
}

// exponent of zeta_N representing e^{2 pi i q}; q*N must be integral
long unity_exponent(const Rational& q, unsigned N) {
    Rational s = TorusExponents::mod1(q) * N;
    if (denominator(s) != 1) throw std::invalid_argument("exponent not representable in Z[zeta_N]");
    return numerator(s).convert_to<long>();
}

}  // namespace

ComplexPoint eta(const TorusPoint& t) {
    ComplexPoint p;
    ComplexReal uv = t.u * t.v;
    p.x = t.u + cinv(t.u);
    p.y = t.v + cinv(t.v);
    p.z = uv + cinv(uv);
    p.D = ComplexReal(Real(4), Real(0));
    return p;
}

Point3<double> eta_angles(double theta, double phi) {
    const double tau = 2.0 * M_PI;
    return {2.0 * std::cos(tau * theta), 2.0 * std::cos(tau * phi),
            2.0 * std::cos(tau * (theta + phi)), 4.0};
}

CyclotomicSurfacePoint eta_exact(const TorusExponents& t, const CyclotomicRing& ring) {
    long ea = unity_exponent(t.a, ring.order());
    long eb = unity_exponent(t.b, ring.order());
    CyclotomicSurfacePoint p{&ring, {}, {}, {}};
    p.x = ring.add(ring.zeta_pow(ea), ring.zeta_pow(-ea));
    p.y = ring.add(ring.zeta_pow(eb), ring.zeta_pow(-eb));
    p.z = ring.add(ring.zeta_pow(ea + eb), ring.zeta_pow(-(ea + eb)));
    return p;
}

TorusExponents monomial_apply(const Mat2& m, const TorusExponents& t) {
    return TorusExponents{Rational(m.a) * t.a + Rational(m.b) * t.b,
                          Rational(m.c) * t.a + Rational(m.d) * t.b}
        .normalized();
}

TorusPoint monomial_apply(const Mat2& m, const TorusPoint& t) {
    return {cpow(t.u, m.a) * cpow(t.v, m.b), cpow(t.u, m.c) * cpow(t.v, m.d)};
}

Real equivariance_defect(const Word& w, const TorusPoint& t) {
    Mat2 m = word_to_matrix(w);
    ComplexPoint lhs = eta(monomial_apply(m, t));
    ComplexPoint rhs = apply(w, eta(t));
    Real d = abs(lhs.x - rhs.x);
    Real dy = abs(lhs.y - rhs.y);
    Real dz = abs(lhs.z - rhs.z);
    if (dy > d) d = dy;
    if (dz > d) d = dz;
    return d;
}

bool equivariance_exact(const Word& w, const TorusExponents& t) {
    TorusExponents s = t.normalized();
    Int N = lcm_int(denominator(s.a), denominator(s.b));
    CyclotomicRing ring(static_cast<unsigned>(N.convert_to<unsigned long>()));

    Mat2 m = word_to_matrix(w);
    auto lhs = eta_exact(monomial_apply(m, s), ring);

    auto p = eta_exact(s, ring);
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        switch (*it) {
            case Letter::X: p.x = ring.sub(ring.mul(p.y, p.z), p.x); break;
            case Letter::Y: p.y = ring.sub(ring.mul(p.x, p.z), p.y); break;
            case Letter::Z: p.z = ring.sub(ring.mul(p.x, p.y), p.z); break;
        }
    }
    return ring.equal(lhs.x, p.x) && ring.equal(lhs.y, p.y) && ring.equal(lhs.z, p.z);
}

std::vector<TorusExponents> periodic_points_exact(const Mat2& m, unsigned n) {
    Mat2 A = m.power(static_cast<long>(n));
    A.a -= 1;
    A.d -= 1;
    if (A.det() == 0) throw DegenerateMatrix("det(M^n - I) = 0");

    Smith2 s = smith_normal_form(A);
    std::vector<TorusExponents> pts;
    pts.reserve(static_cast<std::size_t>((s.s1 * s.s2).convert_to<unsigned long>()));
    for (Int i = 0; i < s.s1; ++i)
        for (Int j = 0; j < s.s2; ++j) {
            Rational y1(i, s.s1), y2(j, s.s2);
            pts.push_back(TorusExponents{Rational(s.V.a) * y1 + Rational(s.V.b) * y2,
                                         Rational(s.V.c) * y1 + Rational(s.V.d) * y2}
                              .normalized());
        }
    return pts;
}

std::vector<TorusExponents> sigma_orbit_representatives(std::vector<TorusExponents> pts) {
    std::set<std::pair<Rational, Rational>> seen;
    std::vector<TorusExponents> reps;
    for (const auto& t : pts) {
        TorusExponents s = t.normalized();
        TorusExponents neg = TorusExponents{-s.a, -s.b}.normalized();
        if (seen.count({s.a, s.b}) || seen.count({neg.a, neg.b})) continue;
        seen.insert({s.a, s.b});
        reps.push_back(s);
    }
    return reps;
}

std::array<Iv, 3> eta_enclosure(const TorusExponents& t, unsigned digits) {
    ScopedPrecision scope(digits + 15);
    Real tau = 2 * acos(Real(-1));
    Real eps = pow(Real(10), -static_cast<int>(digits) + 10);
    auto coord = [&](const Rational& q) {
        Real v = 2 * cos(tau * to_real(q));
        return Iv(Real(v - eps), Real(v + eps));
    };
    return {coord(t.a), coord(t.b), coord(Rational(t.a + t.b))};
}

unsigned surface_period(const Mat2& m, const TorusExponents& t, unsigned max_m) {
    TorusExponents base = t.normalized();
    TorusExponents neg = TorusExponents{-base.a, -base.b}.normalized();
    TorusExponents s = base;
    for (unsigned k = 1; k <= max_m; ++k) {
        s = monomial_apply(m, s);
        if (s == base || s == neg) return k;
    }
    return 0;
}

std::vector<Point3<double>> lebesgue_sample(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<Point3<double>> pts;
    pts.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        double theta = unif(rng);
        double phi = unif(rng);
        pts.push_back(eta_angles(theta, phi));
    }
    return pts;
}

std::vector<CharacterAverage> equidistribution_test(const Mat2& m, unsigned n,
                                                    const std::vector<std::pair<int, int>>& ks) {
    Mat2 A = m.power(static_cast<long>(n));
    A.a -= 1;
    A.d -= 1;
    if (A.det() == 0) throw DegenerateMatrix("det(M^n - I) = 0");
    Smith2 s = smith_normal_form(A);

    // the character k is trivial on {V (i/s1, j/s2)} iff V^T k = 0 mod (s1, s2)
    std::vector<CharacterAverage> out;
    out.reserve(ks.size());
    for (auto [k1, k2] : ks) {
        Int t1 = s.V.a * k1 + s.V.c * k2;
        Int t2 = s.V.b * k1 + s.V.d * k2;
        out.push_back({k1, k2, t1 % s.s1 == 0 && t2 % s.s2 == 0});
    }
    return out;
}

Real closed_form_green(const Mat2& m, const Real& log_abs_u, const Real& log_abs_v) {
    Int t = m.trace(), det = m.det();
    Int disc_i = t * t - 4 * det;
    if (disc_i <= 0) throw NotLoxodromic("monomial map is not loxodromic");
    Real disc = sqrt(Real(disc_i));
    // eigenvalue of largest modulus (sign follows the trace)
    Real mu = t >= 0 ? (Real(t) + disc) / 2 : (Real(t) - disc) / 2;
    if (abs(mu) <= 1) throw NotLoxodromic("spectral radius <= 1");

    Real w1, w2, l1, l2;
    if (m.b != 0 || mu != Real(m.a)) {
        w1 = Real(m.b);
        w2 = mu - Real(m.a);
    } else {
        w1 = mu - Real(m.d);
        w2 = Real(m.c);
    }
    if (m.c != 0 || mu != Real(m.a)) {
        l1 = Real(m.c);
        l2 = mu - Real(m.a);
    } else {
        l1 = mu - Real(m.d);
        l2 = Real(m.b);
    }
    Real pairing = w1 * l1 + w2 * l2;
    l1 /= pairing;
    l2 /= pairing;

    Real height = abs(log_abs_u * l1 + log_abs_v * l2);
    Real spread = abs(w1);
    if (abs(w2) > spread) spread = abs(w2);
    if (abs(w1 + w2) > spread) spread = abs(w1 + w2);
    return height * spread;
}

Real closed_form_green(const Mat2& m, const TorusPoint& t) {
    return closed_form_green(m, log(abs(t.u)), log(abs(t.v)));
}

}  // namespace markov

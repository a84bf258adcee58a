#include <markov/mcg.hpp>

namespace markov {

QuadraticReal spectral_radius(const Mat2& m) {
    Int t = m.trace(), dt = m.det();
    Int disc = t * t - 4 * dt;
    if (disc <= 0) return QuadraticReal(1);  // complex eigenvalues of modulus 1
    Int at = t < 0 ? Int(-t) : t;
    // (|t| + sqrt(disc)) / 2; may fold to a rational if disc is a square
    return QuadraticReal(Rational(at, 2), Rational(1, 2), disc);
}

WordClass classify(const Mat2& m) {
    QuadraticReal rho = spectral_radius(m);
    if ((rho - QuadraticReal(1)).sign() > 0) return WordClass::Loxodromic;
    // radius 1: elliptic iff finite order in PGL_2(Z) (order divides 2,3,4,6)
    for (long k : {1L, 2L, 3L, 4L, 6L})
        if (m.power(k).is_identity_pgl2()) return WordClass::Elliptic;
    return WordClass::Parabolic;
}

DynamicalDegree dynamical_degree(const Word& w) {
    Mat2 m = word_to_matrix(w);
    return DynamicalDegree{spectral_radius(m), m.trace(), m.det()};
}

BoundaryFixedPoints boundary_fixed_points(const Mat2& m) {
    // Fixed points of t -> (a t + b)/(c t + d): c t^2 + (d - a) t - b = 0.
    if (m.c == 0)
        throw std::domain_error("boundary_fixed_points: matrix fixes infinity");
    Int A = m.c, B = m.d - m.a, C = -m.b;
    Int disc = B * B - 4 * A * C;
    if (disc <= 0) throw NotLoxodromic("no real boundary fixed points");
    QuadraticReal r1(Rational(-B, 2 * A), Rational(1, 2 * A), disc);
    QuadraticReal r2(Rational(-B, 2 * A), Rational(-1, 2 * A), disc);
    // |Moebius derivative| = |det| / (c t + d)^2 with |det| = 1: attracting
    // iff (c t + d)^2 > 1.
    auto deriv_small = [&](const QuadraticReal& t) {
        QuadraticReal u = QuadraticReal(Rational(m.c)) * t + QuadraticReal(Rational(m.d));
        return ((u * u) - QuadraticReal(1)).sign() > 0;
    };
    bool r1_attracting = deriv_small(r1);
    bool r2_attracting = deriv_small(r2);
    if (r1_attracting == r2_attracting)
        throw std::domain_error("boundary_fixed_points: not loxodromic (derivative test tied)");
    BoundaryFixedPoints out;
    out.omega = r1_attracting ? r1 : r2;
    out.alpha = r1_attracting ? r2 : r1;
    return out;
}

CommonIterateReport shares_common_iterate(const Word& f, const Word& g, long bound) {
    if (!is_loxodromic(f) || !is_loxodromic(g))
        throw NotLoxodromic("shares_common_iterate: both words must be loxodromic");
    CommonIterateReport rep;

    BoundaryFixedPoints pf = boundary_fixed_points(f), pg = boundary_fixed_points(g);
    rep.same_fixed_point_pair =
        (pf.alpha == pg.alpha && pf.omega == pg.omega) ||
        (pf.alpha == pg.omega && pf.omega == pg.alpha);

    Mat2 mf = word_to_matrix(f), mg = word_to_matrix(g);
    for (long n = -bound; n <= bound; ++n) {
        if (n == 0) continue;
        Mat2 fn = mf.power(n);
        for (long m = 1; m <= bound; ++m) {
            if (Mat2::pgl2_equal(fn, mg.power(m))) {
                rep.found = true;
                rep.n = n;
                rep.m = m;
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace markov

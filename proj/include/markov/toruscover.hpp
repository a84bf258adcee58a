#pragma once

#include <markov/cyclotomic.hpp>
#include <markov/interval.hpp>
#include <markov/mat2.hpp>
#include <markov/snf.hpp>
#include <markov/surface.hpp>
#include <markov/word.hpp>

#include <vector>

namespace markov {

struct DegenerateMatrix : std::runtime_error {
    DegenerateMatrix(const std::string& what) : std::runtime_error(what) {}
};

/// A point of the torus G_m^2 in exact root-of-unity form: (u, v) =
/// (e^{2 pi i a}, e^{2 pi i b}) with rational exponents a, b mod 1.
struct TorusExponents {
    Rational a, b;

    static Rational mod1(Rational q) {
        Int n = numerator(q), d = denominator(q);
        Int r = n % d;
        if (r < 0) r += d;
        return Rational(r, d);
    }
    TorusExponents normalized() const { return {mod1(a), mod1(b)}; }
    friend bool operator==(const TorusExponents& s, const TorusExponents& t) {
        return mod1(s.a) == mod1(t.a) && mod1(s.b) == mod1(t.b);
    }
    friend bool operator<(const TorusExponents& s, const TorusExponents& t) {
        Rational sa = mod1(s.a), ta = mod1(t.a);
        if (sa != ta) return sa < ta;
        return mod1(s.b) < mod1(t.b);
    }
};

/// Complex torus point.
struct TorusPoint {
    ComplexReal u, v;
};

/// eta(u,v) = (u + 1/u, v + 1/v, uv + 1/uv) on M_4.
ComplexPoint eta(const TorusPoint& t);
Point3<double> eta_angles(double theta, double phi);  // unit-torus shortcut

/// eta of an exact root-of-unity point, computed in Z[zeta_N].
struct CyclotomicSurfacePoint {
    const CyclotomicRing* ring;
    CyclotomicRing::Elem x, y, z;  // D = 4 implicitly
};
CyclotomicSurfacePoint eta_exact(const TorusExponents& t, const CyclotomicRing& ring);

/// Monomial action (u,v) -> (u^a v^b, u^c v^d).
TorusExponents monomial_apply(const Mat2& m, const TorusExponents& t);
TorusPoint monomial_apply(const Mat2& m, const TorusPoint& t);

/// || eta(M_w t) - w(eta(t)) || for a complex torus point; pins the
/// composition-order convention between mcg, surface and this module.
Real equivariance_defect(const Word& w, const TorusPoint& t);

/// Exact equivariance check on a root-of-unity point.
bool equivariance_exact(const Word& w, const TorusExponents& t);

/// All torus points with M^n t = t, via Smith normal form of M^n - I.
/// Count equals |det(M^n - I)|; throws DegenerateMatrix when that
/// determinant vanishes.
std::vector<TorusExponents> periodic_points_exact(const Mat2& m, unsigned n);

/// Identify t with -t (the deck involution); returns representatives.
std::vector<TorusExponents> sigma_orbit_representatives(std::vector<TorusExponents> pts);

/// Interval enclosures of eta(t) = (2cos 2pi a, 2cos 2pi b, 2cos 2pi(a+b))
/// computed at `digits` decimal digits, outward by 10^-(digits-10).
std::array<Iv, 3> eta_enclosure(const TorusExponents& t, unsigned digits = 120);

/// Smallest m >= 1 with M^m t = +-t (the period of eta(t) under the
/// surface action); 0 if none is found up to max_m.
unsigned surface_period(const Mat2& m, const TorusExponents& t, unsigned max_m = 64);

/// N points eta(e^{2 pi i theta}, e^{2 pi i phi}) with theta, phi iid
/// uniform from a seeded generator; all coordinates land in [-2,2].
std::vector<Point3<double>> lebesgue_sample(std::uint64_t seed, std::size_t count);

struct CharacterAverage {
    int k1, k2;
    bool average_one;  // exact subgroup character sum: 1 if trivial, else 0
};

/// Exact character averages over the period-n point set of M.
std::vector<CharacterAverage> equidistribution_test(const Mat2& m, unsigned n,
                                                    const std::vector<std::pair<int, int>>& ks);

/// Exact Green value of the monomial map at a torus point via the Perron
/// eigenvector formula; oracle for green_plus at D = 4.
Real closed_form_green(const Mat2& m, const TorusPoint& t);
Real closed_form_green(const Mat2& m, const Real& log_abs_u, const Real& log_abs_v);

}  // namespace markov

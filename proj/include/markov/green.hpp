#pragma once

#include <markov/mcg.hpp>
#include <markov/surface.hpp>

#include <vector>

namespace markov {

/// A place of Q: the archimedean absolute value or |.|_p with |p|_p = 1/p.
struct Place {
    bool archimedean = true;
    Int p = 0;

    static Place arch() { return {true, 0}; }
    static Place finite(Int prime) { return {false, std::move(prime)}; }

    friend bool operator==(const Place& a, const Place& b) {
        return a.archimedean == b.archimedean && a.p == b.p;
    }
    std::string str() const { return archimedean ? "arch" : "p=" + p.str(); }
};

/// |q|_v as a big float (p^{-v_p(q)} at finite places, |q| at infinity).
Real local_abs(const Rational& q, const Place& v);

/// max(|x|_v, |y|_v, |z|_v).
Real local_norm(const RationalPoint& p, const Place& v);

struct GreenEstimate {
    Real value;               // >= 0
    unsigned n_used = 0;
    Real cauchy_gap;          // |estimate_n - estimate_{n-1}| at the stop index
    bool certified_positive = false;
};

/// G+ = lim lambda1^{-n} log+ ||f^n p||_v, stopped at Cauchy gap < tol.
GreenEstimate green_plus(const Word& w, const RationalPoint& p, const Place& v,
                         double tol = 1e-6, unsigned n_max = 60);
GreenEstimate green_minus(const Word& w, const RationalPoint& p, const Place& v,
                          double tol = 1e-6, unsigned n_max = 60);

/// Archimedean-only entry point for float (e.g. sampled) points.
GreenEstimate green_plus(const Word& w, const Point3<double>& p, double tol = 1e-6,
                         unsigned n_max = 60);
GreenEstimate green_minus(const Word& w, const Point3<double>& p, double tol = 1e-6,
                          unsigned n_max = 60);

/// |G+(f p) - lambda1 G+(p)|.
Real functional_equation_residual(const Word& w, const RationalPoint& p, const Place& v,
                                  double tol = 1e-6);

enum class OrbitClass { Bounded, Escaping, Undecided };

OrbitClass bounded_orbit_test(const Word& w, const RationalPoint& p, const Place& v,
                              double tol = 1e-6, unsigned n_max = 60);
OrbitClass bounded_orbit_test(const Word& w, const Point3<double>& p, double tol = 1e-6,
                              unsigned n_max = 60);

struct PlaceContribution {
    Place place;
    Real g_plus, g_minus;
};

struct HeightEstimate {
    Real value;  // sum over places of (G+ + G-)/2
    std::vector<PlaceContribution> per_place;
};

/// Canonical height of a rational point: archimedean place plus every prime
/// dividing a coordinate denominator (all other finite contributions vanish
/// by integrality of the Vieta moves).
HeightEstimate height(const Word& w, const RationalPoint& p, double tol = 1e-6,
                      unsigned n_max = 60);

/// 1 + log max(|a|,|b|,|c|,|d|) for the coprime integer representative
/// (a:b:c:d) of (x:y:z:1).
Real naive_weil_height(const RationalPoint& p);

/// Prime factorization by trial division (denominators are expected small).
std::vector<Int> prime_factors(Int n);

}  // namespace markov

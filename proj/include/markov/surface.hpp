#pragma once

#include <markov/scalar.hpp>
#include <markov/word.hpp>
#include <optional>
#include <vector>

namespace markov {

/// A point of the Markov surface x^2+y^2+z^2 = xyz + D over a pluggable
/// scalar (Rational, double, Real, Cplx<...>, intervals).
template <typename S>
struct Point3 {
    S x{}, y{}, z{};
    S D{};
};

using RationalPoint = Point3<Rational>;
using ComplexPoint = Point3<ComplexReal>;

template <typename S>
S residual(const Point3<S>& p) {
    return p.x * p.x + p.y * p.y + p.z * p.z - p.x * p.y * p.z - p.D;
}

/// kappa = x^2+y^2+z^2-xyz-2; equals D-2 on M_D.
template <typename S>
S kappa(const Point3<S>& p) {
    return p.x * p.x + p.y * p.y + p.z * p.z - p.x * p.y * p.z - S(2);
}

/// One Vieta involution: swaps the two roots of the defining quadratic in
/// the chosen coordinate.
template <typename S>
Point3<S> vieta(Letter l, Point3<S> p) {
    switch (l) {
        case Letter::X: p.x = p.y * p.z - p.x; break;
        case Letter::Y: p.y = p.x * p.z - p.y; break;
        case Letter::Z: p.z = p.x * p.y - p.z; break;
    }
    return p;
}

/// Applies a word, rightmost letter first.
template <typename S>
Point3<S> apply(const Word& w, Point3<S> p) {
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) p = vieta(*it, p);
    return p;
}

template <typename S>
struct Trajectory {
    std::vector<Point3<S>> points;
    bool escaped = false;
    std::optional<std::size_t> escape_index;
};

/// max(|x|,|y|,|z|) helpers for the archimedean norm.
inline double arch_norm(const Point3<double>& p) {
    return std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
}
inline Real arch_norm(const Point3<Real>& p) {
    Real n = abs(p.x);
    if (abs(p.y) > n) n = abs(p.y);
    if (abs(p.z) > n) n = abs(p.z);
    return n;
}
inline Real arch_norm(const ComplexPoint& p) {
    Real n = abs(p.x);
    Real t = abs(p.y);
    if (t > n) n = t;
    t = abs(p.z);
    if (t > n) n = t;
    return n;
}
inline Real arch_norm(const RationalPoint& p) {
    auto av = [](const Rational& q) { return to_real(q < 0 ? Rational(-q) : q); };
    Real n = av(p.x);
    if (av(p.y) > n) n = av(p.y);
    if (av(p.z) > n) n = av(p.z);
    return n;
}

/// Iterates w up to n_max steps or until the norm exceeds escape_radius.
template <typename S, typename NormFn>
Trajectory<S> orbit(const Word& w, Point3<S> p, std::size_t n_max, double escape_radius,
                    NormFn&& norm) {
    Trajectory<S> t;
    t.points.push_back(p);
    for (std::size_t i = 0; i < n_max; ++i) {
        p = apply(w, p);
        t.points.push_back(p);
        if (static_cast<double>(norm(p)) > escape_radius) {
            t.escaped = true;
            t.escape_index = i + 1;
            break;
        }
    }
    return t;
}

template <typename S>
Trajectory<S> orbit(const Word& w, const Point3<S>& p, std::size_t n_max,
                    double escape_radius = 1e8) {
    return orbit(w, p, n_max, escape_radius, [](const Point3<S>& q) { return arch_norm(q); });
}

/// Gradient of the defining polynomial (2x - yz, 2y - xz, 2z - xy).
template <typename S>
std::array<S, 3> surface_gradient(const Point3<S>& p) {
    return {S(2) * p.x - p.y * p.z, S(2) * p.y - p.x * p.z, S(2) * p.z - p.x * p.y};
}

/// 3x3 Jacobian of a word at p by the chain rule over the letters,
/// row-major.
template <typename S>
std::array<std::array<S, 3>, 3> word_jacobian(const Word& w, Point3<S> p) {
    std::array<std::array<S, 3>, 3> j{{{S(1), S(0), S(0)}, {S(0), S(1), S(0)}, {S(0), S(0), S(1)}}};
    const auto& ls = w.letters();
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) {
        // local derivative of the Vieta move at the current point
        std::array<std::array<S, 3>, 3> d{
            {{S(1), S(0), S(0)}, {S(0), S(1), S(0)}, {S(0), S(0), S(1)}}};
        switch (*it) {
            case Letter::X: d[0] = {S(-1), p.z, p.y}; break;
            case Letter::Y: d[1] = {p.z, S(-1), p.x}; break;
            case Letter::Z: d[2] = {p.y, p.x, S(-1)}; break;
        }
        std::array<std::array<S, 3>, 3> nj{};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                S acc = S(0);
                for (int k = 0; k < 3; ++k) acc = acc + d[r][k] * j[k][c];
                nj[r][c] = acc;
            }
        j = nj;
        p = vieta(*it, p);
    }
    return j;
}

/// Eigenvalues of the Jacobian restricted to the tangent plane of the
/// surface at a regular fixed point of w.  Returns the two complex
/// eigenvalues; their product has modulus 1.
std::pair<Cplx<double>, Cplx<double>> jacobian_restricted(const Word& w, const Point3<double>& p,
                                                          double fixed_tol = 1e-8);

}  // namespace markov

#pragma once

#include <markov/surface.hpp>

namespace markov {

/// 2x2 matrix over an exact or floating scalar, determinant 1 for SL2.
template <typename S>
struct Mat2x2 {
    S a{}, b{}, c{}, d{};

    S trace() const { return a + d; }
    S det() const { return a * d - b * c; }

    friend Mat2x2 operator*(const Mat2x2& m, const Mat2x2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }

    /// Inverse for det = 1.
    Mat2x2 inverse_sl2() const { return {d, -b, -c, a}; }
};

template <typename S>
struct SL2Pair {
    Mat2x2<S> A, B;
};

/// Fricke coordinates (Tr A, Tr B, Tr AB); the returned point carries
/// D = kappa(x,y,z) + 2 so it lies on M_D by construction.
template <typename S>
Point3<S> trace_coordinates(const SL2Pair<S>& rho) {
    Point3<S> p;
    p.x = rho.A.trace();
    p.y = rho.B.trace();
    p.z = (rho.A * rho.B).trace();
    p.D = S(0);
    p.D = kappa(p) + S(2);
    return p;
}

/// Tr(A B A^-1 B^-1).
template <typename S>
S commutator_trace(const SL2Pair<S>& rho) {
    return (rho.A * rho.B * rho.A.inverse_sl2() * rho.B.inverse_sl2()).trace();
}

enum class NielsenMove { InvertA, BToAB, Swap };

template <typename S>
SL2Pair<S> nielsen_action(NielsenMove m, const SL2Pair<S>& rho) {
    switch (m) {
        case NielsenMove::InvertA: return {rho.A.inverse_sl2(), rho.B};
        case NielsenMove::BToAB: return {rho.A, rho.A * rho.B};
        default: return {rho.B, rho.A};
    }
}

}  // namespace markov

#pragma once

#include <markov/scalar.hpp>
#include <markov/word.hpp>
#include <array>

namespace markov {

/// 2x2 integer matrix (a b; c d), used both in GL_2(Z) and for exponent
/// matrices of monomial maps.
struct Mat2 {
    Int a{1}, b{0}, c{0}, d{1};

    static Mat2 identity() { return {}; }

    Int det() const { return a * d - b * c; }
    Int trace() const { return a + d; }

    friend Mat2 operator*(const Mat2& m, const Mat2& n) {
        return {m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
                m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d};
    }
    friend Mat2 operator-(const Mat2& m) { return {-m.a, -m.b, -m.c, -m.d}; }
    friend bool operator==(const Mat2& m, const Mat2& n) {
        return m.a == n.a && m.b == n.b && m.c == n.c && m.d == n.d;
    }

    /// Inverse; requires |det| = 1.
    Mat2 inverse() const {
        Int dt = det();
        if (dt == 1) return {d, -b, -c, a};
        if (dt == -1) return {-d, b, c, -a};
        throw std::domain_error("Mat2::inverse: determinant not +-1");
    }

    Mat2 power(long k) const {
        Mat2 base = k >= 0 ? *this : inverse();
        unsigned long n = k >= 0 ? k : -k;
        Mat2 r;
        while (n) {
            if (n & 1) r = r * base;
            base = base * base;
            n >>= 1;
        }
        return r;
    }

    /// Equality in PGL_2: up to a global sign.
    static bool pgl2_equal(const Mat2& m, const Mat2& n) {
        return m == n || m == -n;
    }

    bool is_identity_pgl2() const { return pgl2_equal(*this, identity()); }

    /// Congruent to the identity mod 2 (membership criterion for Gamma*).
    bool is_congruent_identity_mod2() const {
        auto even = [](const Int& x) { return x % 2 == 0; };
        return !even(a) && even(b) && even(c) && !even(d);
    }
};

/// Matrix images of the generators sigma_x, sigma_y, sigma_z.
inline Mat2 generator_matrix(Letter l) {
    switch (l) {
        case Letter::X: return {-1, -2, 0, 1};
        case Letter::Y: return {1, 0, -2, -1};
        default: return {1, 0, 0, -1};
    }
}

/// Product of generator matrices in word order (leftmost letter outermost).
inline Mat2 word_to_matrix(const Word& w) {
    Mat2 m;
    for (Letter l : w.letters()) m = m * generator_matrix(l);
    return m;
}

}  // namespace markov

#pragma once

#include <markov/mat2.hpp>
#include <markov/quadratic.hpp>
#include <optional>
#include <utility>

namespace markov {

enum class WordClass { Elliptic, Parabolic, Loxodromic };

/// lambda_1 stored exactly as a quadratic number plus float views.
struct DynamicalDegree {
    QuadraticReal lambda1;  // spectral radius of the word's matrix
    Int trace;              // trace of the matrix
    Int det;                // determinant (+-1)
    double lambda1_double() const { return lambda1.to_double(); }
    Real lambda1_real(unsigned prec_bits = 128) const { return lambda1.to_real(prec_bits); }
    double entropy() const { return std::log(lambda1.to_double()); }
};

/// The two fixed points of a loxodromic word on the circle at infinity.
struct BoundaryFixedPoints {
    QuadraticReal alpha;  // repelling
    QuadraticReal omega;  // attracting
};

WordClass classify(const Mat2& m);
inline WordClass classify(const Word& w) { return classify(word_to_matrix(w)); }
inline bool is_loxodromic(const Word& w) { return classify(w) == WordClass::Loxodromic; }

/// Spectral radius of a GL_2(Z) matrix as an exact quadratic number.
QuadraticReal spectral_radius(const Mat2& m);

DynamicalDegree dynamical_degree(const Word& w);

BoundaryFixedPoints boundary_fixed_points(const Mat2& m);
inline BoundaryFixedPoints boundary_fixed_points(const Word& w) {
    if (classify(w) != WordClass::Loxodromic)
        throw NotLoxodromic("boundary_fixed_points: word is not loxodromic");
    return boundary_fixed_points(word_to_matrix(w));
}

struct CommonIterateReport {
    bool found = false;
    long n = 0, m = 0;               // f^n = g^m when found
    bool same_fixed_point_pair = false;  // {alpha(f),omega(f)} == {alpha(g),omega(g)}
};

/// Searches |N|,|M| <= bound for f^N = g^M in PGL_2(Z).  "not found" is only
/// "not found within the bound"; a positive answer is definitive.
CommonIterateReport shares_common_iterate(const Word& f, const Word& g, long bound);

}  // namespace markov

#pragma once

#include <markov/interval.hpp>
#include <markov/surface.hpp>

#include <optional>
#include <string>
#include <vector>

namespace markov {

enum class PeriodicLabel { Saddle, NonSaddle, Unclassified };

struct CertifiedPeriodicPoint {
    Point3<double> approx;
    unsigned period = 1;
    Iv bx, by, bz;  // Krawczyk box proven to contain a unique fixed point of w^n
    Cplx<double> eig1, eig2;  // tangent eigenvalues at the approximate point
    PeriodicLabel label = PeriodicLabel::Unclassified;
};

struct SearchBox {
    double lo = -2.5, hi = 2.5;
};

/// Certified fixed points of w^n on M_D found by multistart Newton in the
/// (x, y) chart (z eliminated through the defining quadratic, both branches)
/// and certified by a Krawczyk contraction in all three variables.  Output
/// is a certified subset; completeness is not claimed.
/// Singular surface points (vanishing gradient, e.g. the cone point of M_0
/// or the four nodes of M_4) are excluded unless include_singular is set;
/// when included they certify as A^3 fixed points but stay Unclassified.
std::vector<CertifiedPeriodicPoint> find_periodic(const Word& w, const Rational& D, unsigned n,
                                                  SearchBox box = {}, unsigned grid_density = 48,
                                                  double tol = 1e-10,
                                                  bool include_singular = false);

/// Re-runs interval certification for an already-certified point from its
/// approximation, at the same period.  The fresh box must land on the same
/// solution; used to check certification stability under refinement.
std::optional<CertifiedPeriodicPoint> recertify(const Word& w, const Rational& D,
                                                const CertifiedPeriodicPoint& pt);

/// Labels a certified point via interval enclosures of the two tangent
/// eigenvalues of D(w^n): the 3x3 Jacobian always has eigenvalue 1
/// transversally (the residual is invariant), so the tangent pair solves
/// t^2 - (tr J - 1) t + det J.  Throws SingularPoint if the surface
/// gradient box contains zero.
PeriodicLabel classify_saddle(const Word& w, unsigned n, CertifiedPeriodicPoint& pt);

struct PeriodicComparison {
    std::vector<CertifiedPeriodicPoint> common, only_f, only_g;
};

/// Matches certified boxes of the two searches (periods up to n_max) by box
/// intersection.
PeriodicComparison compare_periodic_sets(const Word& f, const Word& g, const Rational& D,
                                         unsigned n_max, double tol = 1e-10,
                                         SearchBox box = {}, unsigned grid_density = 48);

/// True iff the point lies within `radius` of some sample point.
bool saddle_in_support_test(const CertifiedPeriodicPoint& pt,
                            const std::vector<Point3<double>>& support_sample, double radius);

struct OrbitVerdict {
    Point3<double> start;
    std::string verdict;  // "escaped" | "bounded so far" | "undecided"
    unsigned step = 0;    // escape step when escaped, else budget
};

struct UnboundedOrbitReport {
    std::vector<OrbitVerdict> verdicts;
};

/// For each certified saddle fixed point of f, iterates g and reports
/// escape behavior.  An experiment: results are reported, not asserted.
UnboundedOrbitReport unbounded_orbit_experiment(const Word& f, const Word& g, const Rational& D,
                                                unsigned budget);

}  // namespace markov

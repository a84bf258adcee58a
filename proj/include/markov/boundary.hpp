#pragma once

#include <markov/mcg.hpp>

#include <array>
#include <map>
#include <vector>

namespace markov {

struct NotAdjacent : std::runtime_error {
    NotAdjacent(const std::string& what) : std::runtime_error(what) {}
};
struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct NotAdapted : std::runtime_error {
    NotAdapted(const std::string& what) : std::runtime_error(what) {}
};
struct EigenvalueMismatch : std::runtime_error {
    EigenvalueMismatch(const std::string& what) : std::runtime_error(what) {}
};

/// Primitive integer vector (p, q), a rational point of the circle at
/// infinity in the Farey parametrization (slope p/q, with (1, 0) = infinity).
/// Normalized so q > 0, or p = 1 when q = 0.
struct FareyVertex {
    Int p, q;

    static FareyVertex of(Int p, Int q);

    bool is_infinity() const { return q == 0; }
    Rational slope() const;  // throws NotRational at infinity

    friend bool operator==(const FareyVertex& a, const FareyVertex& b) {
        return a.p == b.p && a.q == b.q;
    }
    friend bool operator!=(const FareyVertex& a, const FareyVertex& b) { return !(a == b); }
    friend bool operator<(const FareyVertex& a, const FareyVertex& b) {
        return a.p < b.p || (a.p == b.p && a.q < b.q);
    }
    std::string str() const;
};

/// |p q' - p' q| = 1
bool farey_adjacent(const FareyVertex& a, const FareyVertex& b);

/// Mediant of the arc running from a to b in the cyclic orientation of the
/// circle (increasing slope, wrapping at infinity); requires adjacency.
FareyVertex farey_mediant(const FareyVertex& a, const FareyVertex& b);

/// Projective action of an integer matrix, re-normalized.
FareyVertex mobius_vertex_action(const Mat2& m, const FareyVertex& v);

using IntMatrix = std::vector<std::vector<Int>>;

/// Exact determinant by rational elimination.
Int matrix_determinant(const IntMatrix& m);

/// (n_plus, n_minus, n_zero) of a symmetric integer matrix, exact.
std::array<int, 3> matrix_signature(const IntMatrix& m);

/// Completion of M_D whose boundary is a cycle of rational curves, one per
/// Farey vertex.  Immutable; blow_up returns a refined copy.
class CyclicCompletion {
  public:
    CyclicCompletion(std::vector<FareyVertex> vertices, IntMatrix intersection);

    /// The triangle of lines at infinity of the cubic in P^3: vertices
    /// -1, 0, infinity with intersection matrix [[-1,1,1],[1,-1,1],[1,1,-1]].
    static CyclicCompletion base();

    const std::vector<FareyVertex>& vertices() const { return verts_; }
    const IntMatrix& intersection() const { return q_; }
    std::size_t size() const { return verts_.size(); }

    std::size_t index_of(const FareyVertex& v) const;  // throws NotAdapted

    /// Blows up the corner between vertices i and i+1 (cyclically): inserts
    /// the Farey mediant with self-intersection -1 and updates its neighbors.
    CyclicCompletion blow_up(std::size_t corner) const;

    /// Index i of the open arc ]v_i, v_{i+1}[ containing the (non-vertex)
    /// point t of the circle.
    std::size_t arc_of(const QuadraticReal& t) const;

  private:
    std::vector<FareyVertex> verts_;
    IntMatrix q_;
};

/// Divisor supported at infinity with exact quadratic-field coefficients.
struct DivisorAtInfinity {
    std::map<FareyVertex, QuadraticReal> coeff;
};

struct PullbackMatrix {
    IntMatrix m;  // entry (row v, col w) = ord_{E_v}(f_X^* E_w)
    Word word;
};

/// Multiplicities of f_X^* by the toric fan rule: each vertex image M.v is
/// written as a nonnegative integer combination of the two vertices of the
/// arc containing it.
PullbackMatrix pullback_matrix(const Word& w, const CyclicCompletion& X);

/// Same rule on an explicit list of fan rays (full circle, sign-sensitive),
/// for cross-checks against monomial-map valuations.
IntMatrix fan_pullback(const std::vector<std::array<Int, 2>>& rays, const Mat2& m);

struct AdaptedCompletion {
    CyclicCompletion X;
    std::size_t corner_plus;    // corner whose arc contains omega(f)
    std::size_t corner_minus;   // corner whose arc contains alpha(f)
    unsigned contracting_power;  // smallest N0 with every vertex image in the omega arc
};

/// Refines the base completion by mediant blow-ups until the corners at
/// omega(f) and alpha(f) are distinct, then `extra_rounds` more times at
/// both corners (pushing the incarnation of theta+ toward its limit class).
AdaptedCompletion adapted_completion(const Word& w, unsigned max_blowups = 64,
                                     unsigned extra_rounds = 0);

/// Perron eigenvector of the pullback matrix for the exact eigenvalue
/// lambda_1, in Q(sqrt(tr^2 - 4 det)); max coefficient normalized to 1.
DivisorAtInfinity theta_plus(const Word& w, const CyclicCompletion& X);
inline DivisorAtInfinity theta_minus(const Word& w, const CyclicCompletion& X) {
    return theta_plus(w.inverse(), X);
}

/// (theta+, theta-) with theta+ . theta- = 1 (theta+ keeps max coefficient 1).
std::pair<DivisorAtInfinity, DivisorAtInfinity> theta_pair(const Word& w,
                                                           const CyclicCompletion& X);

/// Eigen-divisor for the small eigenvalue det(A)/lambda_1, built from the
/// 2x2 corner block of the pullback matrix plus the correction term scaled
/// by lambda_1.  Requires w to contract X to a single corner (only two
/// adjacent nonzero columns); use the contracting power from
/// adapted_completion.
DivisorAtInfinity d_minus(const Word& w, const CyclicCompletion& X);

QuadraticReal intersection_number(const CyclicCompletion& X, const DivisorAtInfinity& a,
                                  const DivisorAtInfinity& b);

/// Exact check that pullback_matrix(w^k, X) = pullback_matrix(w, X)^k for
/// k <= k_max (algebraic stability over X).
bool stability_check(const Word& w, const CyclicCompletion& X, unsigned k_max);

}  // namespace markov

#include <markov/boundary.hpp>

#include <algorithm>
#include <sstream>

namespace markov {

namespace {

Int det2(const Int& ap, const Int& aq, const Int& bp, const Int& bq) {
    return ap * bq - aq * bp;
}

/// Point of the circle R u {infinity}; vertices compare against it exactly.
struct CirclePoint {
    bool inf = false;
    QuadraticReal v;

    static CirclePoint infinity() { return {true, QuadraticReal()}; }
    static CirclePoint finite(QuadraticReal x) { return {false, std::move(x)}; }
};

// -1 / 0 / +1 in the linear order with infinity on top
int cmp(const CirclePoint& a, const CirclePoint& b) {
    if (a.inf && b.inf) return 0;
    if (a.inf) return 1;
    if (b.inf) return -1;
    if (a.v == b.v) return 0;
    return a.v < b.v ? -1 : 1;
}

CirclePoint vertex_point(const FareyVertex& v) {
    if (v.is_infinity()) return CirclePoint::infinity();
    return CirclePoint::finite(QuadraticReal(v.slope()));
}

/// Strictly inside the arc from a to b (cyclic order: increasing slope,
/// wrapping at infinity).
bool arc_contains(const CirclePoint& a, const CirclePoint& b, const CirclePoint& t) {
    if (cmp(t, a) == 0 || cmp(t, b) == 0) return false;
    if (cmp(a, b) < 0) return cmp(a, t) < 0 && cmp(t, b) < 0;
    return cmp(t, a) > 0 || cmp(t, b) < 0;
}

}  // namespace

FareyVertex FareyVertex::of(Int p, Int q) {
    if (p == 0 && q == 0) throw std::invalid_argument("FareyVertex: zero vector");
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(p),
                                       boost::multiprecision::abs(q));
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
    return FareyVertex{std::move(p), std::move(q)};
}

Rational FareyVertex::slope() const {
    if (q == 0) throw NotRational("slope of the vertex at infinity");
    return Rational(p) / Rational(q);
}

std::string FareyVertex::str() const {
    if (is_infinity()) return "inf";
    std::ostringstream os;
    os << p;
    if (q != 1) os << "/" << q;
    return os.str();
}

bool farey_adjacent(const FareyVertex& a, const FareyVertex& b) {
    Int d = det2(a.p, a.q, b.p, b.q);
    return d == 1 || d == -1;
}

FareyVertex farey_mediant(const FareyVertex& a, const FareyVertex& b) {
    Int d = det2(a.p, a.q, b.p, b.q);
    if (d != 1 && d != -1) throw NotAdjacent("farey_mediant: vertices are not adjacent");
    // with det(a, b) = -1 the arc from a to b is the nonnegative span of the
    // representatives and the mediant is the plain sum; det = +1 means a's
    // representative points out of the arc, so flip it
    if (d == 1) return FareyVertex::of(b.p - a.p, b.q - a.q);
    return FareyVertex::of(a.p + b.p, a.q + b.q);
}

FareyVertex mobius_vertex_action(const Mat2& m, const FareyVertex& v) {
    return FareyVertex::of(m.a * v.p + m.b * v.q, m.c * v.p + m.d * v.q);
}

Int matrix_determinant(const IntMatrix& m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    Rational det = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(a[piv], a[k]);
            det = -det;
        }
        det *= a[k][k];
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
        }
    }
    return numerator(det) / denominator(det);
}

std::array<int, 3> matrix_signature(const IntMatrix& m) {
    std::size_t n = m.size();
    std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rational(m[i][j]);
    std::array<int, 3> sig{0, 0, 0};
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            // congruence fix-up: pull a nonzero entry of row k onto the
            // diagonal (add or subtract row+column j; one sign always works)
            std::size_t j = k + 1;
            while (j < n && a[k][j] == 0) ++j;
            if (j == n) {
                ++sig[2];
                continue;
            }
            int s = a[j][j] + 2 * a[k][j] != 0 ? 1 : -1;
            for (std::size_t c = 0; c < n; ++c) a[k][c] += s * a[j][c];
            for (std::size_t r = 0; r < n; ++r) a[r][k] += s * a[r][j];
        }
        a[k][k] > 0 ? ++sig[0] : ++sig[1];
        for (std::size_t i = k + 1; i < n; ++i) {
            Rational f = a[i][k] / a[k][k];
            for (std::size_t c = k; c < n; ++c) a[i][c] -= f * a[k][c];
            for (std::size_t r = k; r < n; ++r) a[r][i] -= f * a[r][k];
        }
    }
    return sig;
}

CyclicCompletion::CyclicCompletion(std::vector<FareyVertex> vertices, IntMatrix intersection)
    : verts_(std::move(vertices)), q_(std::move(intersection)) {
    if (q_.size() != verts_.size())
        throw std::invalid_argument("CyclicCompletion: matrix/vertex size mismatch");
    for (const auto& row : q_)
        if (row.size() != verts_.size())
            throw std::invalid_argument("CyclicCompletion: intersection matrix not square");
}

CyclicCompletion CyclicCompletion::base() {
    std::vector<FareyVertex> v{FareyVertex::of(-1, 1), FareyVertex::of(0, 1),
                               FareyVertex::of(1, 0)};
    IntMatrix q{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    return CyclicCompletion(std::move(v), std::move(q));
}

std::size_t CyclicCompletion::index_of(const FareyVertex& v) const {
    for (std::size_t i = 0; i < verts_.size(); ++i)
        if (verts_[i] == v) return i;
    throw NotAdapted("vertex " + v.str() + " is not in the completion");
}

CyclicCompletion CyclicCompletion::blow_up(std::size_t corner) const {
    std::size_t r = verts_.size();
    std::size_t i = corner % r, j = (i + 1) % r;
    if (!farey_adjacent(verts_[i], verts_[j]))
        throw NotAdjacent("blow_up: corner vertices are not Farey-adjacent");
    FareyVertex mid = farey_mediant(verts_[i], verts_[j]);

    std::vector<FareyVertex> nv = verts_;
    nv.insert(nv.begin() + static_cast<long>(i) + 1, mid);
    std::size_t n = r + 1, im = i + 1;  // new vertex index; old j shifts to im+1 (mod n)
    auto old_index = [&](std::size_t k) { return k <= i ? k : k - 1; };

    IntMatrix nq(n, std::vector<Int>(n, 0));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == im || b == im) continue;
            nq[a][b] = q_[old_index(a)][old_index(b)];
        }
    std::size_t jn = (im + 1) % n;
    nq[im][im] = -1;
    nq[im][i] = nq[i][im] = 1;
    nq[im][jn] = nq[jn][im] = 1;
    nq[i][i] -= 1;
    nq[jn][jn] -= 1;
    nq[i][jn] = nq[jn][i] = 0;
    return CyclicCompletion(std::move(nv), std::move(nq));
}

std::size_t CyclicCompletion::arc_of(const QuadraticReal& t) const {
    CirclePoint pt = CirclePoint::finite(t);
    for (std::size_t i = 0; i < verts_.size(); ++i)
        if (arc_contains(vertex_point(verts_[i]), vertex_point(verts_[(i + 1) % verts_.size()]),
                         pt))
            return i;
    throw NotAdapted("arc_of: point coincides with a vertex");
}

namespace {

CirclePoint image_point(const Mat2& m, const FareyVertex& v) {
    Int p = m.a * v.p + m.b * v.q, q = m.c * v.p + m.d * v.q;
    if (q == 0) return CirclePoint::infinity();
    return CirclePoint::finite(QuadraticReal(Rational(p) / Rational(q)));
}

IntMatrix pullback_entries(const Mat2& m, const CyclicCompletion& X) {
    std::size_t r = X.size();
    const auto& V = X.vertices();
    IntMatrix P(r, std::vector<Int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        Int mp = m.a * V[i].p + m.b * V[i].q, mq = m.c * V[i].p + m.d * V[i].q;
        // image equal to a vertex?
        bool hit = false;
        for (std::size_t j = 0; j < r && !hit; ++j)
            if (mp * V[j].q == mq * V[j].p) {
                P[i][j] += 1;
                hit = true;
            }
        if (hit) continue;

        CirclePoint pt = mq == 0 ? CirclePoint::infinity()
                                 : CirclePoint::finite(QuadraticReal(Rational(mp) / Rational(mq)));
        std::size_t j = r;
        for (std::size_t k = 0; k < r; ++k)
            if (arc_contains(vertex_point(V[k]), vertex_point(V[(k + 1) % r]), pt)) {
                j = k;
                break;
            }
        if (j == r) throw NotAdapted("pullback: vertex image escapes every cone");

        std::size_t jn = (j + 1) % r;
        Int ap = V[j].p, aq = V[j].q, bp = V[jn].p, bq = V[jn].q;
        if (det2(ap, aq, bp, bq) == 1) {
            ap = -ap;
            aq = -aq;
        }
        // M.v = alpha a + beta b with det(a, b) = -1
        Int alpha = -det2(mp, mq, bp, bq), beta = -det2(ap, aq, mp, mq);
        if (alpha <= 0 && beta <= 0) {
            alpha = -alpha;
            beta = -beta;
        }
        if (alpha < 0 || beta < 0)
            throw NotAdapted("pullback: inconsistent cone decomposition");
        P[i][j] += alpha;
        P[i][jn] += beta;
    }
    return P;
}

}  // namespace

PullbackMatrix pullback_matrix(const Word& w, const CyclicCompletion& X) {
    return PullbackMatrix{pullback_entries(word_to_matrix(w), X), w};
}

IntMatrix fan_pullback(const std::vector<std::array<Int, 2>>& rays, const Mat2& m) {
    std::size_t r = rays.size();
    IntMatrix P(r, std::vector<Int>(r, 0));
    for (std::size_t i = 0; i < r; ++i) {
        Int mp = m.a * rays[i][0] + m.b * rays[i][1], mq = m.c * rays[i][0] + m.d * rays[i][1];
        bool placed = false;
        for (std::size_t j = 0; j < r && !placed; ++j) {
            std::size_t jn = (j + 1) % r;
            Int d = det2(rays[j][0], rays[j][1], rays[jn][0], rays[jn][1]);
            if (d == 0) continue;
            Int alpha = det2(mp, mq, rays[jn][0], rays[jn][1]),
                beta = det2(rays[j][0], rays[j][1], mp, mq);
            if (d < 0) {
                alpha = -alpha;
                beta = -beta;
                d = -d;
            }
            if (alpha < 0 || beta < 0 || alpha % d != 0 || beta % d != 0) continue;
            P[i][j] += alpha / d;
            P[i][jn] += beta / d;
            placed = true;
        }
        if (!placed) throw NotAdapted("fan_pullback: ray image outside all cones");
    }
    return P;
}

AdaptedCompletion adapted_completion(const Word& w, unsigned max_blowups,
                                     unsigned extra_rounds) {
    BoundaryFixedPoints fix = boundary_fixed_points(w);
    CyclicCompletion X = CyclicCompletion::base();
    unsigned used = 0;
    auto spend = [&] {
        if (used++ >= max_blowups)
            throw BudgetExceeded("adapted_completion: blow-up budget exhausted");
    };
    for (;;) {
        std::size_t iw = X.arc_of(fix.omega), ia = X.arc_of(fix.alpha);
        if (iw != ia) break;
        spend();
        X = X.blow_up(iw);
    }
    for (unsigned k = 0; k < 2 * extra_rounds; ++k) {
        spend();
        X = X.blow_up(X.arc_of(k % 2 ? fix.alpha : fix.omega));
    }
    std::size_t iw = X.arc_of(fix.omega), ia = X.arc_of(fix.alpha);

    // contraction certificate: smallest N with every vertex image strictly
    // inside the omega arc
    Mat2 M = word_to_matrix(w), Mn = M;
    const auto& V = X.vertices();
    CirclePoint a = vertex_point(V[iw]), b = vertex_point(V[(iw + 1) % X.size()]);
    unsigned n0 = 0;
    for (unsigned n = 1; n <= 512 && n0 == 0; ++n, Mn = Mn * M) {
        bool all = true;
        for (const auto& v : V)
            if (!arc_contains(a, b, image_point(Mn, v))) {
                all = false;
                break;
            }
        if (all) n0 = n;
    }
    if (n0 == 0) throw BudgetExceeded("adapted_completion: no contracting power <= 512");
    return AdaptedCompletion{std::move(X), iw, ia, n0};
}

namespace {

using QMatrix = std::vector<std::vector<QuadraticReal>>;

bool qr_zero(const QuadraticReal& x) { return x == QuadraticReal(); }

/// One kernel vector of a square matrix over Q(sqrt(delta)), or empty.
std::vector<QuadraticReal> kernel_vector(QMatrix a) {
    std::size_t n = a.size();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < n; ++col) {
        std::size_t piv = row;
        while (piv < n && qr_zero(a[piv][col])) ++piv;
        if (piv == n) continue;
        std::swap(a[piv], a[row]);
        QuadraticReal inv = QuadraticReal(1) / a[row][col];
        for (std::size_t j = col; j < n; ++j) a[row][j] = a[row][j] * inv;
        for (std::size_t i = 0; i < n; ++i) {
            if (i == row || qr_zero(a[i][col])) continue;
            QuadraticReal f = a[i][col];
            for (std::size_t j = col; j < n; ++j) a[i][j] = a[i][j] - f * a[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    // first free column gives a kernel vector
    std::vector<QuadraticReal> x(n, QuadraticReal());
    std::size_t free_col = n;
    for (std::size_t col = 0, k = 0; col < n; ++col) {
        if (k < pivot_col.size() && pivot_col[k] == col) {
            ++k;
            continue;
        }
        free_col = col;
        break;
    }
    if (free_col == n) return {};
    x[free_col] = QuadraticReal(1);
    for (std::size_t k = 0; k < pivot_col.size(); ++k)
        x[pivot_col[k]] = -a[k][free_col];
    return x;
}

double power_iteration_radius(const IntMatrix& p) {
    std::size_t n = p.size();
    std::vector<double> v(n, 1.0), w(n);
    double rho = 0;
    for (int it = 0; it < 400; ++it) {
        double norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            w[i] = 0;
            for (std::size_t j = 0; j < n; ++j)
                w[i] += static_cast<double>(p[i][j]) * v[j];
            norm = std::max(norm, std::abs(w[i]));
        }
        if (norm == 0) return 0;
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
        rho = norm;
    }
    return rho;
}

DivisorAtInfinity make_divisor(const CyclicCompletion& X,
                               const std::vector<QuadraticReal>& coeffs) {
    DivisorAtInfinity d;
    for (std::size_t i = 0; i < X.size(); ++i)
        if (!qr_zero(coeffs[i])) d.coeff[X.vertices()[i]] = coeffs[i];
    return d;
}

}  // namespace

DivisorAtInfinity theta_plus(const Word& w, const CyclicCompletion& X) {
    DynamicalDegree dd = dynamical_degree(w);
    IntMatrix P = pullback_entries(word_to_matrix(w), X);

    double rho = power_iteration_radius(P);
    if (std::abs(rho - dd.lambda1_double()) > 1e-9)
        throw EigenvalueMismatch("theta_plus: Perron value of the pullback matrix is " +
                                 std::to_string(rho) + ", not lambda_1");

    std::size_t n = P.size();
    QMatrix A(n, std::vector<QuadraticReal>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            A[i][j] = QuadraticReal(Rational(P[i][j]));
            if (i == j) A[i][j] = A[i][j] - dd.lambda1;
        }
    std::vector<QuadraticReal> x = kernel_vector(std::move(A));
    if (x.empty())
        throw EigenvalueMismatch("theta_plus: lambda_1 is not an exact eigenvalue");

    int lead = 0;
    for (const auto& c : x)
        if ((lead = c.sign()) != 0) break;
    if (lead < 0)
        for (auto& c : x) c = -c;
    QuadraticReal max(0);
    for (const auto& c : x) {
        if (c.sign() < 0)
            throw EigenvalueMismatch("theta_plus: eigenvector is not nonnegative");
        if (max < c) max = c;
    }
    for (auto& c : x) c = c / max;
    return make_divisor(X, x);
}

std::pair<DivisorAtInfinity, DivisorAtInfinity> theta_pair(const Word& w,
                                                           const CyclicCompletion& X) {
    DivisorAtInfinity tp = theta_plus(w, X);
    DivisorAtInfinity tm = theta_minus(w, X);
    QuadraticReal s = intersection_number(X, tp, tm);
    if (s.sign() <= 0)
        throw EigenvalueMismatch("theta_pair: theta+ . theta- is not positive");
    for (auto& [v, c] : tm.coeff) c = c / s;
    return {std::move(tp), std::move(tm)};
}

DivisorAtInfinity d_minus(const Word& w, const CyclicCompletion& X) {
    DynamicalDegree dd = dynamical_degree(w);
    IntMatrix P = pullback_entries(word_to_matrix(w), X);
    std::size_t n = P.size();

    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (P[i][j] != 0) {
                cols.push_back(j);
                break;
            }
    if (cols.size() != 2 ||
        !(cols[1] == cols[0] + 1 || (cols[0] == 0 && cols[1] == n - 1)))
        throw NotAdapted("d_minus: word does not contract the completion to one corner; "
                         "apply the contracting power");
    std::size_t e = cols[0], f = cols[1];
    if (cols[0] == 0 && cols[1] == n - 1) std::swap(e, f);  // wrap-around corner

    QuadraticReal b00(Rational(P[e][e])), b01(Rational(P[e][f]));
    QuadraticReal b10(Rational(P[f][e])), b11(Rational(P[f][f]));
    QuadraticReal mu = (b00 * b11 - b01 * b10) / dd.lambda1;  // det(A)/lambda_1
    if ((b00 + b11) != dd.lambda1 + mu)
        throw EigenvalueMismatch("d_minus: corner block trace is not lambda_1 + det/lambda_1");

    QuadraticReal gamma, delta;
    if (!qr_zero(b01)) {
        gamma = b01;
        delta = mu - b00;
    } else {
        gamma = mu - b11;
        delta = b10;
    }
    if (qr_zero(gamma) && qr_zero(delta))
        throw EigenvalueMismatch("d_minus: degenerate corner eigenvector");

    // D- = gamma E+ + delta F+ + lambda_1 R with R the off-corner part of
    // the pullback of gamma E+ + delta F+
    std::vector<QuadraticReal> x(n, QuadraticReal());
    x[e] = gamma;
    x[f] = delta;
    for (std::size_t v = 0; v < n; ++v) {
        if (v == e || v == f) continue;
        x[v] = dd.lambda1 * (gamma * QuadraticReal(Rational(P[v][e])) +
                             delta * QuadraticReal(Rational(P[v][f])));
    }
    return make_divisor(X, x);
}

QuadraticReal intersection_number(const CyclicCompletion& X, const DivisorAtInfinity& a,
                                  const DivisorAtInfinity& b) {
    QuadraticReal total;
    for (const auto& [va, ca] : a.coeff) {
        std::size_t i = X.index_of(va);
        for (const auto& [vb, cb] : b.coeff) {
            std::size_t j = X.index_of(vb);
            if (X.intersection()[i][j] == 0) continue;
            total = total + ca * cb * QuadraticReal(Rational(X.intersection()[i][j]));
        }
    }
    return total;
}

bool stability_check(const Word& w, const CyclicCompletion& X, unsigned k_max) {
    IntMatrix P1;
    try {
        P1 = pullback_entries(word_to_matrix(w), X);
    } catch (const NotAdapted&) {
        return false;
    }
    std::size_t n = P1.size();
    IntMatrix Pk = P1;
    for (unsigned k = 2; k <= k_max; ++k) {
        IntMatrix next(n, std::vector<Int>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) {
                if (Pk[i][l] == 0) continue;
                for (std::size_t j = 0; j < n; ++j) next[i][j] += Pk[i][l] * P1[l][j];
            }
        Pk = std::move(next);
        IntMatrix direct;
        try {
            direct = pullback_entries(word_to_matrix(w.power(static_cast<long>(k))), X);
        } catch (const NotAdapted&) {
            return false;
        }
        if (direct != Pk) return false;
    }
    return true;
}

}  // namespace markov

#include <markov/mcg.hpp>
#include <markov/periodic.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <tuple>
#include <utility>

namespace markov {

namespace {

constexpr unsigned kDigits = 45;  // ~150 bits for certification intervals

double grad_norm(const Point3<double>& p) {
    auto g = surface_gradient(p);
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2]);
}

bool solve3(const std::array<std::array<double, 3>, 3>& a, const std::array<double, 3>& b,
            std::array<double, 3>& x) {
    double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                 a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                 a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    if (std::abs(det) < 1e-13) return false;
    std::array<std::array<double, 3>, 3> inv{
        {{(a[1][1] * a[2][2] - a[1][2] * a[2][1]) / det,
          (a[0][2] * a[2][1] - a[0][1] * a[2][2]) / det,
          (a[0][1] * a[1][2] - a[0][2] * a[1][1]) / det},
         {(a[1][2] * a[2][0] - a[1][0] * a[2][2]) / det,
          (a[0][0] * a[2][2] - a[0][2] * a[2][0]) / det,
          (a[0][2] * a[1][0] - a[0][0] * a[1][2]) / det},
         {(a[1][0] * a[2][1] - a[1][1] * a[2][0]) / det,
          (a[0][1] * a[2][0] - a[0][0] * a[2][1]) / det,
          (a[0][0] * a[1][1] - a[0][1] * a[1][0]) / det}}};
    for (int i = 0; i < 3; ++i) x[i] = inv[i][0] * b[0] + inv[i][1] * b[1] + inv[i][2] * b[2];
    return true;
}

// The zeros of w^n - id are found as zeros of H = w^a - w^{-b} with
// a + b = n: each side only expands like lambda1^(n/2), which keeps the
// Newton basins reachable from a coarse grid.
struct BalancedWord {
    Word fwd, bwd;  // w^a, w^{-b}
};

BalancedWord balance(const Word& w, unsigned n) {
    unsigned a = (n + 1) / 2, b = n - a;
    return {w.power(a), w.inverse().power(b)};
}

std::array<double, 3> hval(const BalancedWord& bw, const Point3<double>& p) {
    Point3<double> u = apply(bw.fwd, p), v = apply(bw.bwd, p);
    return {u.x - v.x, u.y - v.y, u.z - v.z};
}

double norm2(const std::array<double, 3>& h) {
    return h[0] * h[0] + h[1] * h[1] + h[2] * h[2];
}

bool in_range(const Point3<double>& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) &&
           std::abs(p.x) < 1e6 && std::abs(p.y) < 1e6 && std::abs(p.z) < 1e6;
}

// damped Newton on H = w^a - w^{-b} in all three variables
std::optional<Point3<double>> newton3(const BalancedWord& bw, double D, double x0, double y0,
                                      double z0) {
    Point3<double> p{x0, y0, z0, D};
    for (int it = 0; it < 80; ++it) {
        auto JA = word_jacobian(bw.fwd, p);
        auto JB = word_jacobian(bw.bwd, p);
        std::array<std::array<double, 3>, 3> J{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) J[i][j] = JA[i][j] - JB[i][j];
        auto h = hval(bw, p);
        double h2 = norm2(h);
        std::array<double, 3> step{};
        if (!solve3(J, h, step)) return std::nullopt;
        double smax = std::max({std::abs(step[0]), std::abs(step[1]), std::abs(step[2])});
        if (smax < 1e-13 && h2 < 1e-22) return p;
        bool moved = false;
        for (double t = 1.0; t >= 1.0 / 16; t /= 2) {
            Point3<double> q{p.x - t * step[0], p.y - t * step[1], p.z - t * step[2], D};
            if (!in_range(q)) continue;
            if (norm2(hval(bw, q)) < h2) {
                p = q;
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
    }
    return std::nullopt;
}

template <typename T>
T& comp(Point3<T>& p, int i) {
    return i == 0 ? p.x : i == 1 ? p.y : p.z;
}
template <typename T>
const T& comp(const Point3<T>& p, int i) {
    return i == 0 ? p.x : i == 1 ? p.y : p.z;
}

// The defining equation is symmetric, so any coordinate can be eliminated
// through the quadratic.  elim names the eliminated one; the chart keeps
// the other two (i1, i2) and picks the root on branch s.
std::optional<Point3<double>> newton2(const BalancedWord& bw, double D, int elim, int s,
                                      double u0, double v0) {
    int i1 = (elim + 1) % 3, i2 = (elim + 2) % 3;
    double u = u0, v = v0;
    auto chart = [&](double cu, double cv, Point3<double>& p, double& dwdu,
                     double& dwdv) -> bool {
        double disc = cu * cu * cv * cv - 4 * (cu * cu + cv * cv - D);
        if (disc < 1e-12) return false;
        double sq = std::sqrt(disc);
        p.D = D;
        comp(p, i1) = cu;
        comp(p, i2) = cv;
        comp(p, elim) = (cu * cv + s * sq) / 2;
        dwdu = (cv + s * (cu * cv * cv - 4 * cu) / sq) / 2;
        dwdv = (cu + s * (cu * cu * cv - 4 * cv) / sq) / 2;
        return true;
    };
    for (int it = 0; it < 80; ++it) {
        Point3<double> p;
        double dwdu, dwdv;
        if (!chart(u, v, p, dwdu, dwdv)) return std::nullopt;
        auto JA = word_jacobian(bw.fwd, p);
        auto JB = word_jacobian(bw.bwd, p);
        auto h = hval(bw, p);
        double a11 = (JA[i1][i1] - JB[i1][i1]) + (JA[i1][elim] - JB[i1][elim]) * dwdu;
        double a12 = (JA[i1][i2] - JB[i1][i2]) + (JA[i1][elim] - JB[i1][elim]) * dwdv;
        double a21 = (JA[i2][i1] - JB[i2][i1]) + (JA[i2][elim] - JB[i2][elim]) * dwdu;
        double a22 = (JA[i2][i2] - JB[i2][i2]) + (JA[i2][elim] - JB[i2][elim]) * dwdv;
        double det = a11 * a22 - a12 * a21;
        if (std::abs(det) < 1e-13) return std::nullopt;
        double h2 = h[i1] * h[i1] + h[i2] * h[i2];
        double du = (h[i1] * a22 - h[i2] * a12) / det, dv = (a11 * h[i2] - a21 * h[i1]) / det;
        if (std::max(std::abs(du), std::abs(dv)) < 1e-13 && h2 < 1e-22) {
            // chart zero: accept only if the eliminated component closes up
            if (std::abs(h[elim]) < 1e-8) return p;
            return std::nullopt;
        }
        bool moved = false;
        for (double t = 1.0; t >= 1.0 / 16; t /= 2) {
            double nu = u - t * du, nv = v - t * dv;
            Point3<double> q;
            double d1, d2;
            if (!std::isfinite(nu) || !std::isfinite(nv) || std::abs(nu) > 1e6 ||
                std::abs(nv) > 1e6 || !chart(nu, nv, q, d1, d2))
                continue;
            auto hq = hval(bw, q);
            if (hq[i1] * hq[i1] + hq[i2] * hq[i2] < h2) {
                u = nu;
                v = nv;
                moved = true;
                break;
            }
        }
        if (!moved) return std::nullopt;
    }
    return std::nullopt;
}

struct IvBox {
    Iv x, y, z;
};

// one Krawczyk step; returns the operator image K
bool krawczyk_step(const Word& wn, const IvBox& X, IvBox& K) {
    // full-precision midpoints: see krawczyk2_step
    Real mx = X.x.mid_real(), my = X.y.mid_real(), mz = X.z.mid_real();
    Point3<double> mid{mx.convert_to<double>(), my.convert_to<double>(), mz.convert_to<double>(),
                       0};
    auto Jd = word_jacobian(wn, mid);
    for (int i = 0; i < 3; ++i) Jd[i][i] -= 1;

    // Y = inverse of the midpoint Jacobian, plain doubles
    std::array<std::array<double, 3>, 3> Y{};
    {
        std::array<double, 3> e{}, col{};
        for (int j = 0; j < 3; ++j) {
            e.fill(0);
            e[j] = 1;
            if (!solve3(Jd, e, col)) return false;
            for (int i = 0; i < 3; ++i) Y[i][j] = col[i];
        }
    }

    Point3<Iv> M{Iv(mx), Iv(my), Iv(mz), Iv(0)};
    Point3<Iv> Fm = apply(wn, M);
    Iv Hm[3] = {Fm.x - M.x, Fm.y - M.y, Fm.z - M.z};

    Point3<Iv> PX{X.x, X.y, X.z, Iv(0)};
    auto JX = word_jacobian(wn, PX);
    for (int i = 0; i < 3; ++i) JX[i][i] -= Iv(1);

    Iv dX[3] = {X.x - Iv(mx), X.y - Iv(my), X.z - Iv(mz)};
    Iv Kv[3];
    for (int i = 0; i < 3; ++i) {
        Iv acc = Iv((i == 0) ? mx : (i == 1) ? my : mz);
        for (int k = 0; k < 3; ++k) acc -= Iv(Y[i][k]) * Hm[k];
        for (int j = 0; j < 3; ++j) {
            Iv coef = (i == j) ? Iv(1) : Iv(0);
            for (int k = 0; k < 3; ++k) coef -= Iv(Y[i][k]) * JX[k][j];
            acc += coef * dX[j];
        }
        Kv[i] = acc;
    }
    K = {Kv[0], Kv[1], Kv[2]};
    return true;
}

// radius ladder for initial Krawczyk boxes: small radii matter for long
// words, where interval dependency inflates D(w^n) enclosures and kills
// contraction on wide boxes
constexpr double kRadii[] = {1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4};

bool krawczyk_certify(const Word& wn, const Point3<double>& p, IvBox& out) {
    for (double r : kRadii) {
        IvBox X{Iv::of(p.x - r, p.x + r), Iv::of(p.y - r, p.y + r), Iv::of(p.z - r, p.z + r)};
        IvBox K;
        if (!krawczyk_step(wn, X, K)) continue;
        if (!(X.x.strictly_contains(K.x) && X.y.strictly_contains(K.y) &&
              X.z.strictly_contains(K.z)))
            continue;
        // contract to a tight enclosure
        X = {intersect(X.x, K.x), intersect(X.y, K.y), intersect(X.z, K.z)};
        for (int it = 0; it < 20; ++it) {
            IvBox K2;
            if (!krawczyk_step(wn, X, K2)) break;
            IvBox X2{intersect(X.x, K2.x), intersect(X.y, K2.y), intersect(X.z, K2.z)};
            if (!X2.x.valid() || !X2.y.valid() || !X2.z.valid()) break;
            if (X2.x.width() >= X.x.width() && X2.y.width() >= X.y.width() &&
                X2.z.width() >= X.z.width())
                break;
            X = X2;
        }
        out = X;
        return true;
    }
    return false;
}

// ---- chart certification --------------------------------------------------
// At a regular periodic point D(w^n) always has eigenvalue 1 transversally
// (the fixed locus of w^n in A^3 moves with D), so the 3D Krawczyk operator
// is singular there.  Certification for regular points therefore runs in a
// two-variable chart with the third coordinate solved from the quadratic;
// the 3D operator stays in use for the gradient-zero nodes, where every
// chart discriminant vanishes.

bool chart_iv(const Word& wn, const Iv& U, const Iv& V, const Iv& D, int elim, int s, Iv G[2],
              Iv JG[2][2], Iv* E2, Iv* Wout) {
    int i1 = (elim + 1) % 3, i2 = (elim + 2) % 3;
    Iv disc = U * U * V * V - Iv(4) * (U * U + V * V - D);
    if (disc.hi <= 0) return false;
    Iv sq = sqrt_iv(disc);
    if (!(sq.lo > 0)) return false;  // branch locus inside the box
    Iv W = (U * V + Iv(s) * sq) * Iv(0.5);
    Iv dwdu = (V + Iv(s) * ((U * (V * V) - Iv(4) * U) / sq)) * Iv(0.5);
    Iv dwdv = (U + Iv(s) * (((U * U) * V - Iv(4) * V) / sq)) * Iv(0.5);

    Point3<Iv> P;
    P.D = D;
    comp(P, i1) = U;
    comp(P, i2) = V;
    comp(P, elim) = W;
    auto J3 = word_jacobian(wn, P);
    Point3<Iv> F = apply(wn, P);
    G[0] = comp(F, i1) - U;
    G[1] = comp(F, i2) - V;
    JG[0][0] = J3[i1][i1] + J3[i1][elim] * dwdu - Iv(1);
    JG[0][1] = J3[i1][i2] + J3[i1][elim] * dwdv;
    JG[1][0] = J3[i2][i1] + J3[i2][elim] * dwdu;
    JG[1][1] = J3[i2][i2] + J3[i2][elim] * dwdv - Iv(1);
    if (E2) *E2 = comp(F, elim) - (U * V - W);  // distance to the conjugate root
    if (Wout) *Wout = W;
    return true;
}

bool krawczyk2_step(const Word& wn, const Iv& D, int elim, int s, const Iv X[2], Iv K[2]) {
    // the midpoint must lie inside X for the mean-value enclosure, so keep
    // it at full precision (a double midpoint exits X once the box is tight)
    Real mx = X[0].mid_real(), my = X[1].mid_real();
    Iv Gm[2], JGm[2][2];
    if (!chart_iv(wn, Iv(mx), Iv(my), D, elim, s, Gm, JGm, nullptr, nullptr)) return false;
    Iv GX[2], JGX[2][2];
    if (!chart_iv(wn, X[0], X[1], D, elim, s, GX, JGX, nullptr, nullptr)) return false;

    double a = JGm[0][0].mid(), b = JGm[0][1].mid();
    double c = JGm[1][0].mid(), d = JGm[1][1].mid();
    double det = a * d - b * c;
    if (std::abs(det) < 1e-13) return false;
    double Y[2][2] = {{d / det, -b / det}, {-c / det, a / det}};

    Iv dX[2] = {X[0] - Iv(mx), X[1] - Iv(my)};
    for (int i = 0; i < 2; ++i) {
        Iv acc = Iv(i == 0 ? mx : my);
        for (int k = 0; k < 2; ++k) acc -= Iv(Y[i][k]) * Gm[k];
        for (int j = 0; j < 2; ++j) {
            Iv coef = (i == j) ? Iv(1) : Iv(0);
            for (int k = 0; k < 2; ++k) coef -= Iv(Y[i][k]) * JGX[k][j];
            acc += coef * dX[j];
        }
        K[i] = acc;
    }
    return true;
}

bool chart_certify_one(const Word& wn, const Point3<double>& p, const Iv& Dq, int elim,
                       IvBox& out) {
    int i1 = (elim + 1) % 3, i2 = (elim + 2) % 3;
    double pu = comp(p, i1), pv = comp(p, i2), pw = comp(p, elim);
    int s = pw > pu * pv / 2 ? 1 : -1;
    for (double r : kRadii) {
        Iv X[2] = {Iv::of(pu - r, pu + r), Iv::of(pv - r, pv + r)};
        Iv K[2];
        if (!krawczyk2_step(wn, Dq, elim, s, X, K)) continue;
        if (!(X[0].strictly_contains(K[0]) && X[1].strictly_contains(K[1]))) continue;
        X[0] = intersect(X[0], K[0]);
        X[1] = intersect(X[1], K[1]);
        for (int it = 0; it < 20; ++it) {
            Iv K2[2];
            if (!krawczyk2_step(wn, Dq, elim, s, X, K2)) break;
            Iv X0 = intersect(X[0], K2[0]), X1 = intersect(X[1], K2[1]);
            if (!X0.valid() || !X1.valid()) break;
            if (X0.width() >= X[0].width() && X1.width() >= X[1].width()) break;
            X[0] = X0;
            X[1] = X1;
        }
        Iv G[2], JG[2][2], E2, W;
        if (!chart_iv(wn, X[0], X[1], Dq, elim, s, G, JG, &E2, &W)) continue;
        // the eliminated image component is one of the two quadratic roots;
        // excluding the conjugate root proves the point is genuinely fixed
        if (E2.contains_zero()) continue;
        IvBox b;
        (elim == 0 ? b.x : elim == 1 ? b.y : b.z) = W;
        (i1 == 0 ? b.x : i1 == 1 ? b.y : b.z) = X[0];
        (i2 == 0 ? b.x : i2 == 1 ? b.y : b.z) = X[1];
        out = b;
        return true;
    }
    return false;
}

bool chart_certify(const Word& wn, const Point3<double>& p, const Rational& D, IvBox& out) {
    Iv Dq = Iv::from_rational(D);
    double Dd = to_real(D).convert_to<double>();
    // try charts in order of branch-locus clearance at p
    std::array<std::pair<double, int>, 3> order;
    for (int e = 0; e < 3; ++e) {
        int i1 = (e + 1) % 3, i2 = (e + 2) % 3;
        double u = comp(p, i1), v = comp(p, i2);
        order[e] = {u * u * v * v - 4 * (u * u + v * v - Dd), e};
    }
    std::sort(order.begin(), order.end(), std::greater<>());
    for (auto [disc, e] : order) {
        if (disc <= 0) break;
        if (chart_certify_one(wn, p, Dq, e, out)) return true;
    }
    return false;
}

bool certify_point(const Word& wn, const Point3<double>& p, const Rational& D, bool singular,
                   IvBox& out) {
    if (singular) return krawczyk_certify(wn, p, out);
    if (chart_certify(wn, p, D, out)) return true;
    return krawczyk_certify(wn, p, out);  // last resort
}

bool on_surface(const IvBox& b, const Rational& D) {
    Point3<Iv> p{b.x, b.y, b.z, Iv::from_rational(D)};
    return residual(p).contains_zero();
}

}  // namespace

std::optional<CertifiedPeriodicPoint> recertify(const Word& w, const Rational& D,
                                                const CertifiedPeriodicPoint& pt) {
    ScopedPrecision scope(kDigits);
    Word wn = w.power(static_cast<long>(pt.period));
    bool singular = grad_norm(pt.approx) < 1e-7;
    IvBox b;
    if (!certify_point(wn, pt.approx, D, singular, b)) return std::nullopt;
    if (!on_surface(b, D)) return std::nullopt;
    CertifiedPeriodicPoint cp = pt;
    cp.bx = b.x;
    cp.by = b.y;
    cp.bz = b.z;
    return cp;
}

PeriodicLabel classify_saddle(const Word& w, unsigned n, CertifiedPeriodicPoint& pt) {
    ScopedPrecision scope(kDigits);
    Word wn = w.power(static_cast<long>(n));
    Point3<Iv> PX{pt.bx, pt.by, pt.bz, Iv(0)};

    auto grad = surface_gradient(PX);
    if (grad[0].contains_zero() && grad[1].contains_zero() && grad[2].contains_zero())
        throw SingularPoint("gradient enclosure vanishes: singular surface point");

    // D(w^n) fixes the residual, so 1 is always an eigenvalue; the tangent
    // pair solves t^2 - (tr - 1) t + det = 0
    auto J = word_jacobian(wn, PX);
    Iv tr = J[0][0] + J[1][1] + J[2][2];
    Iv det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
             J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
             J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    Iv b = tr - Iv(1), c = det;
    Iv disc = b * b - Iv(4) * c;

    double bm = b.mid(), cm = c.mid(), dm = bm * bm - 4 * cm;
    if (dm >= 0) {
        pt.eig1 = {(bm + std::sqrt(dm)) / 2, 0};
        pt.eig2 = {(bm - std::sqrt(dm)) / 2, 0};
    } else {
        pt.eig1 = {bm / 2, std::sqrt(-dm) / 2};
        pt.eig2 = {bm / 2, -std::sqrt(-dm) / 2};
    }

    auto excludes_one = [](const Iv& mod) { return mod.lo > 1 || mod.hi < 1; };
    if (disc.hi < 0) {
        // complex conjugate pair, common modulus sqrt(c)
        Iv mod = sqrt_iv(c);
        if (c.contains(Real(1))) {
            pt.label = PeriodicLabel::NonSaddle;  // |det| = 1 forces unit modulus
        } else if (excludes_one(mod)) {
            pt.label = PeriodicLabel::Saddle;
        } else {
            pt.label = PeriodicLabel::Unclassified;
        }
    } else if (disc.lo > 0) {
        Iv sq = sqrt_iv(disc);
        Iv m1 = abs_iv((b + sq) * Iv(0.5)), m2 = abs_iv((b - sq) * Iv(0.5));
        pt.label = excludes_one(m1) && excludes_one(m2) ? PeriodicLabel::Saddle
                                                        : PeriodicLabel::Unclassified;
    } else {
        pt.label = PeriodicLabel::Unclassified;
    }
    return pt.label;
}

std::vector<CertifiedPeriodicPoint> find_periodic(const Word& w, const Rational& D, unsigned n,
                                                  SearchBox box, unsigned grid_density,
                                                  double tol, bool include_singular) {
    if (classify(w) != WordClass::Loxodromic)
        throw NotLoxodromic("find_periodic needs a loxodromic word");
    Word wn = w.power(static_cast<long>(n));
    double Dd = static_cast<double>(to_real(D).convert_to<double>());

    std::vector<Point3<double>> candidates;
    auto record = [&](const Point3<double>& p) {
        if (std::abs(residual(p)) > 1e-6) return;  // p.D carries the target D
        for (const auto& q : candidates)
            if (std::abs(p.x - q.x) < 1e-6 && std::abs(p.y - q.y) < 1e-6 &&
                std::abs(p.z - q.z) < 1e-6)
                return;
        candidates.push_back(p);
    };

    BalancedWord bw = balance(w, n);
    double span = box.hi - box.lo;
    for (unsigned i = 0; i < grid_density; ++i)
        for (unsigned j = 0; j < grid_density; ++j) {
            double x0 = box.lo + span * (i + 0.5) / grid_density;
            double y0 = box.lo + span * (j + 0.5) / grid_density;
            for (int s : {-1, 1}) {
                for (int elim = 0; elim < 3; ++elim)
                    if (auto p = newton2(bw, Dd, elim, s, x0, y0)) record(*p);
                // 3D pass from the same chart start (covers the branch locus)
                double disc = x0 * x0 * y0 * y0 - 4 * (x0 * x0 + y0 * y0 - Dd);
                if (disc >= 0) {
                    double z0 = (x0 * y0 + s * std::sqrt(disc)) / 2;
                    if (auto p = newton3(bw, Dd, x0, y0, z0)) record(*p);
                } else if (s == 1) {
                    if (auto p = newton3(bw, Dd, x0, y0, x0 * y0 / 2)) record(*p);
                }
            }
        }

    // orbit closure: fixed points of w^n come in w-orbits, and Newton often
    // reaches only part of an orbit from the grid; images of found points
    // are excellent starts for the rest.  Starts here are already accurate,
    // so use the plain fixed-point operator w^n - id, whose chart Jacobian
    // stays regular where the balanced one can degenerate.
    BalancedWord direct{wn, w.power(0)};
    for (std::size_t pass = 0, grown = 1; pass < n && grown; ++pass) {
        grown = 0;
        std::vector<Point3<double>> base = candidates;
        for (const auto& c : base) {
            Point3<double> q = apply(w, c);
            if (!in_range(q)) continue;
            std::size_t before = candidates.size();
            if (auto p = newton3(direct, Dd, q.x, q.y, q.z)) record(*p);
            for (int elim = 0; elim < 3; ++elim) {
                double u0 = elim == 0 ? q.y : elim == 1 ? q.z : q.x;
                double v0 = elim == 0 ? q.z : elim == 1 ? q.x : q.y;
                for (int s : {-1, 1})
                    if (auto p = newton2(direct, Dd, elim, s, u0, v0)) record(*p);
            }
            grown += candidates.size() - before;
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
    });

    ScopedPrecision scope(kDigits);
    std::vector<CertifiedPeriodicPoint> out;
    for (const auto& p : candidates) {
        bool singular = grad_norm(p) < 1e-7;
        if (singular && !include_singular) continue;

        IvBox bxk;
        if (!certify_point(wn, p, D, singular, bxk)) continue;
        if (!on_surface(bxk, D)) continue;
        double width = std::max({bxk.x.width().convert_to<double>(),
                                 bxk.y.width().convert_to<double>(),
                                 bxk.z.width().convert_to<double>()});
        if (width > tol && width > 1e-8) continue;

        // merge with an already-certified overlapping box
        bool dup = false;
        for (const auto& c : out)
            if (c.bx.inflated(2).intersects(bxk.x) && c.by.inflated(2).intersects(bxk.y) &&
                c.bz.inflated(2).intersects(bxk.z)) {
                dup = true;
                break;
            }
        if (dup) continue;

        CertifiedPeriodicPoint cp;
        cp.approx = {bxk.x.mid(), bxk.y.mid(), bxk.z.mid()};
        cp.period = n;
        cp.bx = bxk.x;
        cp.by = bxk.y;
        cp.bz = bxk.z;
        if (singular) {
            cp.label = PeriodicLabel::Unclassified;
        } else {
            try {
                classify_saddle(w, n, cp);
            } catch (const SingularPoint&) {
                cp.label = PeriodicLabel::Unclassified;
            }
        }
        out.push_back(std::move(cp));
    }
    return out;
}

PeriodicComparison compare_periodic_sets(const Word& f, const Word& g, const Rational& D,
                                         unsigned n_max, double tol, SearchBox box,
                                         unsigned grid_density) {
    std::vector<CertifiedPeriodicPoint> pf, pg;
    for (unsigned n = 1; n <= n_max; ++n) {
        auto a = find_periodic(f, D, n, box, grid_density, tol);
        pf.insert(pf.end(), a.begin(), a.end());
        auto b = find_periodic(g, D, n, box, grid_density, tol);
        pg.insert(pg.end(), b.begin(), b.end());
    }

    auto overlaps = [](const CertifiedPeriodicPoint& a, const CertifiedPeriodicPoint& b) {
        return a.bx.intersects(b.bx) && a.by.intersects(b.by) && a.bz.intersects(b.bz);
    };

    PeriodicComparison rep;
    std::vector<bool> matched_g(pg.size(), false);
    for (const auto& a : pf) {
        bool common = false;
        for (std::size_t j = 0; j < pg.size(); ++j)
            if (overlaps(a, pg[j])) {
                matched_g[j] = true;
                common = true;
            }
        (common ? rep.common : rep.only_f).push_back(a);
    }
    for (std::size_t j = 0; j < pg.size(); ++j)
        if (!matched_g[j]) rep.only_g.push_back(pg[j]);
    return rep;
}

bool saddle_in_support_test(const CertifiedPeriodicPoint& pt,
                            const std::vector<Point3<double>>& support_sample, double radius) {
    for (const auto& s : support_sample) {
        double dx = pt.approx.x - s.x, dy = pt.approx.y - s.y, dz = pt.approx.z - s.z;
        if (dx * dx + dy * dy + dz * dz <= radius * radius) return true;
    }
    return false;
}

UnboundedOrbitReport unbounded_orbit_experiment(const Word& f, const Word& g, const Rational& D,
                                                unsigned budget) {
    UnboundedOrbitReport rep;
    auto saddles = find_periodic(f, D, 1);
    for (const auto& s : saddles) {
        if (s.label != PeriodicLabel::Saddle) continue;
        Point3<double> p = s.approx;
        OrbitVerdict v{p, "bounded so far", budget};
        for (unsigned k = 1; k <= budget; ++k) {
            p = apply(g, p);
            double nrm = std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
            if (!std::isfinite(nrm) || nrm > 1e8) {
                v.verdict = "escaped";
                v.step = k;
                break;
            }
        }
        rep.verdicts.push_back(std::move(v));
    }
    return rep;
}

}  // namespace markov

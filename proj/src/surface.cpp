#include <markov/surface.hpp>

#include <Eigen/Dense>

namespace markov {

std::pair<Cplx<double>, Cplx<double>> jacobian_restricted(const Word& w, const Point3<double>& p,
                                                          double fixed_tol) {
    auto g = surface_gradient(p);
    Eigen::Vector3d grad(g[0], g[1], g[2]);
    double scale = 1.0 + std::max({std::abs(p.x), std::abs(p.y), std::abs(p.z)});
    if (grad.norm() < 1e-12 * scale * scale)
        throw SingularPoint("jacobian_restricted: gradient vanishes");

    Point3<double> q = apply(w, p);
    double dist = std::max({std::abs(q.x - p.x), std::abs(q.y - p.y), std::abs(q.z - p.z)});
    if (dist > fixed_tol * scale)
        throw NotFixed("jacobian_restricted: point is not fixed by the word");

    auto jj = word_jacobian(w, p);
    Eigen::Matrix3d J;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) J(r, c) = jj[r][c];

    // orthonormal basis of the tangent plane (kernel of grad^T)
    Eigen::Vector3d n = grad.normalized();
    Eigen::Vector3d a = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
    Eigen::Vector3d t1 = n.cross(a).normalized();
    Eigen::Vector3d t2 = n.cross(t1).normalized();
    Eigen::Matrix<double, 3, 2> B;
    B.col(0) = t1;
    B.col(1) = t2;

    Eigen::Matrix2d R = B.transpose() * J * B;
    double tr = R.trace(), det = R.determinant();
    double disc = tr * tr - 4 * det;
    if (disc >= 0) {
        double s = std::sqrt(disc);
        return {Cplx<double>((tr + s) / 2, 0.0), Cplx<double>((tr - s) / 2, 0.0)};
    }
    double s = std::sqrt(-disc);
    return {Cplx<double>(tr / 2, s / 2), Cplx<double>(tr / 2, -s / 2)};
}

}  // namespace markov

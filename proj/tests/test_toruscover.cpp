#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <markov/mcg.hpp>
#include <markov/toruscover.hpp>

#include <random>

using namespace markov;

namespace {

TorusPoint unit_point(double theta, double phi) {
    Real tau = 2 * acos(Real(-1));
    Real t = Real(theta) * tau;
    Real p = Real(phi) * tau;
    return {{cos(t), sin(t)}, {cos(p), sin(p)}};
}

Word random_word(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(1, max_len), pick(0, 2);
    std::vector<Letter> ls;
    int n = len(rng);
    for (int i = 0; i < n; ++i) ls.push_back(static_cast<Letter>(pick(rng)));
    return Word(std::move(ls));
}

}  // namespace

TEST_CASE("eta on distinguished points") {
    Real::default_precision(40);
    TorusPoint one{{Real(1), Real(0)}, {Real(1), Real(0)}};
    auto p = eta(one);
    CHECK(abs(p.x - ComplexReal(Real(2))) < 1e-30);
    CHECK(abs(p.y - ComplexReal(Real(2))) < 1e-30);
    CHECK(abs(p.z - ComplexReal(Real(2))) < 1e-30);

    TorusPoint ii{{Real(0), Real(1)}, {Real(0), Real(1)}};
    auto q = eta(ii);
    CHECK(abs(q.x) < 1e-30);
    CHECK(abs(q.y) < 1e-30);
    CHECK(abs(q.z + ComplexReal(Real(2))) < 1e-30);

    TorusPoint mm{{Real(-1), Real(0)}, {Real(-1), Real(0)}};
    auto r = eta(mm);
    CHECK(abs(r.x + ComplexReal(Real(2))) < 1e-30);
    CHECK(abs(r.y + ComplexReal(Real(2))) < 1e-30);
    CHECK(abs(r.z - ComplexReal(Real(2))) < 1e-30);
}

TEST_CASE("deck invariance: eta(t) = eta(-t), exactly on roots of unity") {
    std::mt19937_64 rng(101);
    std::uniform_int_distribution<int> num(0, 11);
    for (int i = 0; i < 50; ++i) {
        TorusExponents t{Rational(num(rng), 12), Rational(num(rng), 12)};
        TorusExponents neg = TorusExponents{-t.a, -t.b}.normalized();
        CyclotomicRing ring(12);
        auto a = eta_exact(t, ring), b = eta_exact(neg, ring);
        CHECK(ring.equal(a.x, b.x));
        CHECK(ring.equal(a.y, b.y));
        CHECK(ring.equal(a.z, b.z));
    }
    // sigma = -id as a monomial map
    Mat2 sigma{-1, 0, 0, -1};
    TorusExponents t{Rational(1, 5), Rational(2, 5)};
    CHECK(monomial_apply(sigma, t) == TorusExponents{Rational(4, 5), Rational(3, 5)});
}

TEST_CASE("monomial action on exponents") {
    Mat2 m{2, 1, 1, 1};
    TorusExponents t{Rational(1, 5), Rational(2, 5)};
    auto s = monomial_apply(m, t);
    CHECK(s.a == Rational(4, 5));
    CHECK(s.b == Rational(3, 5));
    CHECK(monomial_apply(Mat2::identity(), t) == t);
}

TEST_CASE("equivariance pins the composition convention") {
    std::mt19937_64 rng(103);

    SUBCASE("exact, cyclotomic") {
        std::uniform_int_distribution<int> num(0, 11);
        CHECK(equivariance_exact(Word::parse("z"), {Rational(1, 5), Rational(2, 5)}));
        for (int i = 0; i < 40; ++i) {
            Word w = random_word(rng, 6);
            TorusExponents t{Rational(num(rng), 12), Rational(num(rng), 12)};
            CHECK(equivariance_exact(w, t));
        }
    }

    SUBCASE("float, 128-bit") {
        Real::default_precision(40);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        CHECK(equivariance_defect(Word(), unit_point(0.37, 0.61)) == 0);
        for (int i = 0; i < 100; ++i) {
            Word w = random_word(rng, 6);
            CHECK(equivariance_defect(w, unit_point(unif(rng), unif(rng))) < 1e-10);
        }
    }
}

TEST_CASE("smith normal form") {
    std::mt19937_64 rng(107);
    std::uniform_int_distribution<long> e(-20, 20);
    for (int i = 0; i < 300; ++i) {
        Mat2 A{e(rng), e(rng), e(rng), e(rng)};
        Smith2 s = smith_normal_form(A);
        CHECK(abs(s.U.det()) == 1);
        CHECK(abs(s.V.det()) == 1);
        Mat2 D = s.U * A * s.V;
        CHECK(D.a == s.s1);
        CHECK(D.d == s.s2);
        CHECK(D.b == 0);
        CHECK(D.c == 0);
        CHECK(s.s1 >= 0);
        CHECK(s.s2 >= 0);
        if (s.s1 != 0) CHECK(s.s2 % s.s1 == 0);
        CHECK(s.s1 * s.s2 == abs(A.det()));
    }
}

TEST_CASE("exact periodic points of M=(2 1;1 1)") {
    Mat2 m{2, 1, 1, 1};

    auto p1 = periodic_points_exact(m, 1);
    REQUIRE(p1.size() == 1);
    CHECK(p1[0] == TorusExponents{0, 0});

    auto p2 = periodic_points_exact(m, 2);
    CHECK(p2.size() == 5);

    auto p3 = periodic_points_exact(m, 3);
    CHECK(p3.size() == 16);

    for (unsigned n : {1u, 2u, 3u}) {
        Mat2 mn = m.power(n);
        for (const auto& t : periodic_points_exact(m, n)) CHECK(monomial_apply(mn, t) == t);
    }

    // all points distinct
    for (std::size_t i = 0; i < p3.size(); ++i)
        for (std::size_t j = i + 1; j < p3.size(); ++j) CHECK(!(p3[i] == p3[j]));

    // rotation of order 4: M^4 = I
    Mat2 rot{0, -1, 1, 0};
    CHECK_THROWS_AS(periodic_points_exact(rot, 4), DegenerateMatrix);
}

TEST_CASE("sigma identification of periodic points") {
    Mat2 m{2, 1, 1, 1};
    auto p2 = periodic_points_exact(m, 2);
    auto reps = sigma_orbit_representatives(p2);
    // 5 points: the fixed point (0,0) plus two sigma-paired couples
    CHECK(reps.size() == 3);
}

TEST_CASE("eta-images of exact periodic points are fixed by the word power") {
    Word w = Word::parse("xyz");
    Mat2 m = word_to_matrix(w);
    for (unsigned n : {1u, 2u}) {
        Word wn = w.power(n);
        Mat2 mn = m.power(n);
        for (const auto& t : periodic_points_exact(m, n)) {
            CHECK(monomial_apply(mn, t) == t);
            // with equivariance this gives apply(w^n, eta(t)) = eta(t) exactly
            CHECK(equivariance_exact(wn, t));
        }
    }
}

TEST_CASE("loxodromic monomial words share all torsion periodic points") {
    Word w1 = Word::parse("xyz"), w2 = Word::parse("xzy");
    Mat2 m1 = word_to_matrix(w1), m2 = word_to_matrix(w2);
    for (unsigned n : {1u, 2u, 3u}) {
        for (const auto& t : periodic_points_exact(m1, n)) {
            Int q = lcm(denominator(t.a), denominator(t.b));
            long bound = (q * q).convert_to<long>();
            TorusExponents s = t;
            bool periodic = false;
            for (long i = 0; i < bound; ++i) {
                s = monomial_apply(m2, s);
                if (s == t) {
                    periodic = true;
                    break;
                }
            }
            CHECK(periodic);
        }
    }
}

TEST_CASE("lebesgue sample lands on the Julia set") {
    auto pts = lebesgue_sample(42, 2000);
    REQUIRE(pts.size() == 2000);
    for (const auto& p : pts) {
        CHECK(std::abs(p.x) <= 2.0);
        CHECK(std::abs(p.y) <= 2.0);
        CHECK(std::abs(p.z) <= 2.0);
        CHECK(std::abs(residual(p)) < 1e-12);
    }
    auto again = lebesgue_sample(42, 2000);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        CHECK(pts[i].x == again[i].x);
        CHECK(pts[i].y == again[i].y);
        CHECK(pts[i].z == again[i].z);
    }
    auto other = lebesgue_sample(43, 2000);
    CHECK(other[0].x != pts[0].x);
}

TEST_CASE("exact character averages over period-n points") {
    Mat2 m{2, 1, 1, 1};

    auto r1 = equidistribution_test(m, 1, {{0, 0}, {1, 0}, {7, -3}});
    for (const auto& c : r1) CHECK(c.average_one);  // single-point set

    // period-2 subgroup is generated by (1/5, 2/5)
    auto r2 = equidistribution_test(m, 2, {{0, 0}, {1, 2}, {1, 0}, {0, 1}, {3, 1}});
    CHECK(r2[0].average_one);   // trivial character
    CHECK(r2[1].average_one);   // <(1,2),(1/5,2/5)> = 1
    CHECK(!r2[2].average_one);  // 1/5
    CHECK(!r2[3].average_one);  // 2/5
    CHECK(r2[4].average_one);   // 3/5 + 2/5 = 1

    // brute-force cross-check of the lattice test at n = 3
    auto pts = periodic_points_exact(m, 3);
    std::vector<std::pair<int, int>> ks;
    for (int k1 = -4; k1 <= 4; ++k1)
        for (int k2 = -4; k2 <= 4; ++k2) ks.push_back({k1, k2});
    auto r3 = equidistribution_test(m, 3, ks);
    for (const auto& c : r3) {
        bool all_integral = true;
        for (const auto& t : pts)
            if (denominator(Rational(c.k1) * t.a + Rational(c.k2) * t.b) != 1) {
                all_integral = false;
                break;
            }
        CHECK(c.average_one == all_integral);
    }

    CHECK_THROWS_AS(equidistribution_test(Mat2{0, -1, 1, 0}, 4, {{1, 1}}), DegenerateMatrix);
}

TEST_CASE("closed-form Green values") {
    Real::default_precision(40);
    Mat2 m{2, 1, 1, 1};

    CHECK(closed_form_green(m, Real(0), Real(0)) == 0);

    // u = e, v = 1: exact value (5 + 3 sqrt 5)/10
    Real g = closed_form_green(m, Real(1), Real(0));
    Real expect = (5 + 3 * sqrt(Real(5))) / 10;
    CHECK(abs(g - expect) < 1e-30);

    // linear in the log vector
    Real g2 = closed_form_green(m, Real(2), Real(0));
    CHECK(abs(g2 - 2 * g) < 1e-30);

    Real gm = closed_form_green(m, Real(0.3), Real(-0.7));
    Real gm2 = closed_form_green(m, Real(0.6), Real(-1.4));
    CHECK(abs(gm2 - 2 * gm) < 1e-25);

    // functional equation: G(M L) = lambda1 G(L)
    Real lam = (3 + sqrt(Real(5))) / 2;
    Real l1 = Real(0.3), l2 = Real(-0.7);
    Real gl = closed_form_green(m, 2 * l1 + l2, l1 + l2);
    CHECK(abs(gl - lam * gm) < 1e-25);

    CHECK_THROWS_AS(closed_form_green(Mat2{0, -1, 1, 0}, Real(1), Real(0)), NotLoxodromic);
    CHECK_THROWS_AS(closed_form_green(Mat2{1, 1, 0, 1}, Real(1), Real(0)), NotLoxodromic);
}

TEST_CASE("cyclotomic ring sanity") {
    CHECK(CyclotomicRing::cyclotomic_polynomial(1) == std::vector<Int>{-1, 1});
    CHECK(CyclotomicRing::cyclotomic_polynomial(4) == std::vector<Int>{1, 0, 1});
    CHECK(CyclotomicRing::cyclotomic_polynomial(5) == std::vector<Int>{1, 1, 1, 1, 1});
    CHECK(CyclotomicRing::cyclotomic_polynomial(12) == std::vector<Int>{1, 0, -1, 0, 1});

    CyclotomicRing r(12);
    // zeta^12 = 1, zeta^6 = -1
    CHECK(r.equal(r.zeta_pow(12), r.from_int(1)));
    CHECK(r.equal(r.zeta_pow(6), r.neg(r.from_int(1))));
    CHECK(r.equal(r.mul(r.zeta_pow(7), r.zeta_pow(5)), r.from_int(1)));
    // 2 cos(2 pi/12) = zeta + 1/zeta has square 3
    auto c = r.add(r.zeta_pow(1), r.zeta_pow(-1));
    CHECK(r.equal(r.mul(c, c), r.from_int(3)));
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <markov/boundary.hpp>

#include <random>

using namespace markov;

namespace {

std::vector<QuadraticReal> coeffs(const CyclicCompletion& X, const DivisorAtInfinity& d) {
    std::vector<QuadraticReal> x(X.size());
    for (const auto& [v, c] : d.coeff) x[X.index_of(v)] = c;
    return x;
}

DivisorAtInfinity from_ints(const CyclicCompletion& X, const std::vector<int>& v) {
    DivisorAtInfinity d;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i]) d.coeff[X.vertices()[i]] = QuadraticReal(v[i]);
    return d;
}

}  // namespace

TEST_CASE("base completion: triangle of lines at infinity") {
    auto X = CyclicCompletion::base();
    REQUIRE(X.size() == 3);
    IntMatrix expect{{-1, 1, 1}, {1, -1, 1}, {1, 1, -1}};
    CHECK(X.intersection() == expect);
    CHECK(matrix_determinant(X.intersection()) == 4);
    auto sig = matrix_signature(X.intersection());
    CHECK(sig == std::array<int, 3>{1, 2, 0});
    for (int i = 0; i < 3; ++i)
        CHECK(farey_adjacent(X.vertices()[i], X.vertices()[(i + 1) % 3]));
    CHECK(X.vertices()[0] == FareyVertex::of(-1, 1));
    CHECK(X.vertices()[2].is_infinity());
}

TEST_CASE("farey mediants land inside their arc") {
    auto zero = FareyVertex::of(0, 1), inf = FareyVertex::of(1, 0), mone = FareyVertex::of(-1, 1);
    CHECK(farey_mediant(zero, inf) == FareyVertex::of(1, 1));
    CHECK(farey_mediant(inf, mone) == FareyVertex::of(-2, 1));
    CHECK(farey_mediant(mone, zero) == FareyVertex::of(-1, 2));
    // mediant stays adjacent to both parents
    auto m = farey_mediant(inf, mone);
    CHECK(farey_adjacent(m, inf));
    CHECK(farey_adjacent(m, mone));
    CHECK_THROWS_AS(farey_mediant(zero, FareyVertex::of(-2, 1)), NotAdjacent);
}

TEST_CASE("mobius action on vertices") {
    Mat2 m{3, -2, -2, 1};
    CHECK(mobius_vertex_action(Mat2::identity(), FareyVertex::of(5, 7)) == FareyVertex::of(5, 7));
    CHECK(mobius_vertex_action(m, FareyVertex::of(0, 1)) == FareyVertex::of(-2, 1));
    // primitive in, primitive out
    auto v = mobius_vertex_action(m, FareyVertex::of(3, 5));
    CHECK(boost::multiprecision::gcd(boost::multiprecision::abs(v.p), v.q) == 1);
}

TEST_CASE("hexagon from blowing all three corners") {
    auto X = CyclicCompletion::base();
    X = X.blow_up(0);   // corner (-1, 0)
    X = X.blow_up(2);   // corner (0, inf)
    X = X.blow_up(4);   // corner (inf, -1)
    REQUIRE(X.size() == 6);
    for (std::size_t i = 0; i < 6; ++i) {
        bool exceptional = !(i == 0 || i == 2 || i == 4);
        CHECK(X.intersection()[i][i] == (exceptional ? -1 : -3));
        CHECK(X.intersection()[i][(i + 1) % 6] == 1);
        CHECK(X.intersection()[i][(i + 2) % 6] == 0);
    }
    CHECK(X.index_of(FareyVertex::of(-2, 1)) == 5);
}

TEST_CASE("determinant sign flips and signature stays (1, r-1) over 20 blow-ups") {
    auto X = CyclicCompletion::base();
    Int det = 4;
    std::mt19937 rng(11);
    for (int k = 0; k < 20; ++k) {
        X = X.blow_up(rng() % X.size());
        Int d = matrix_determinant(X.intersection());
        CHECK(d == -det);
        det = d;
        auto sig = matrix_signature(X.intersection());
        CHECK(sig[0] == 1);
        CHECK(sig[1] == static_cast<int>(X.size()) - 1);
        CHECK(sig[2] == 0);
        for (std::size_t i = 0; i < X.size(); ++i)
            CHECK(farey_adjacent(X.vertices()[i], X.vertices()[(i + 1) % X.size()]));
    }
}

TEST_CASE("toric fan rule against monomial valuations") {
    // u^2 v pulled back along the 4-ray fan: valuation p*2 + q*1 at ray (p,q)
    std::vector<std::array<Int, 2>> rays{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    auto P = fan_pullback(rays, Mat2{2, 1, 1, 1});
    CHECK(P[0][0] == 2);
    CHECK(P[1][0] == 1);
    CHECK(P[2][0] == 0);
    CHECK(P[3][0] == 0);
}

TEST_CASE("pullback of the identity word is the identity matrix") {
    auto X = CyclicCompletion::base().blow_up(1);
    auto P = pullback_matrix(Word(), X).m;
    for (std::size_t i = 0; i < X.size(); ++i)
        for (std::size_t j = 0; j < X.size(); ++j) CHECK(P[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("pullback of xyz on the base triangle") {
    auto P = pullback_matrix(Word::parse("xyz"), CyclicCompletion::base()).m;
    IntMatrix expect{{3, 0, 2}, {1, 0, 1}, {2, 0, 1}};
    CHECK(P == expect);
}

TEST_CASE("adapted completion separates the boundary fixed points") {
    Word w = Word::parse("xyz");
    auto ad = adapted_completion(w);
    CHECK(ad.corner_plus != ad.corner_minus);
    auto fix = boundary_fixed_points(w);
    CHECK(ad.X.arc_of(fix.omega) == ad.corner_plus);
    CHECK(ad.X.arc_of(fix.alpha) == ad.corner_minus);
    CHECK(ad.contracting_power >= 1);

    // the inverse word swaps the two corners
    auto bw = adapted_completion(w.inverse());
    REQUIRE(bw.X.size() == ad.X.size());
    CHECK(bw.corner_plus == ad.corner_minus);
    CHECK(bw.corner_minus == ad.corner_plus);

    // an un-separated word needs blow-ups; a zero budget is exceeded
    CHECK_THROWS_AS(adapted_completion(Word::parse("xyxzx"), 0), BudgetExceeded);
    CHECK_NOTHROW(adapted_completion(Word::parse("xyxzx")));
}

TEST_CASE("theta+ is an exact nonnegative eigenvector for lambda_1") {
    for (const char* s : {"xyz", "xyxz"}) {
        Word w = Word::parse(s);
        auto ad = adapted_completion(w, 64, 4);
        auto tp = theta_plus(w, ad.X);
        auto lam = dynamical_degree(w).lambda1;
        auto P = pullback_matrix(w, ad.X).m;
        auto x = coeffs(ad.X, tp);
        QuadraticReal one(1), max(0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            CHECK(x[i].sign() >= 0);
            if (max < x[i]) max = x[i];
            QuadraticReal acc;
            for (std::size_t j = 0; j < x.size(); ++j)
                if (P[i][j] != 0) acc = acc + QuadraticReal(Rational(P[i][j])) * x[j];
            CHECK(acc == lam * x[i]);
        }
        CHECK(max == one);
    }
}

TEST_CASE("theta pair: product one, vanishing self-intersections in deep completions") {
    Word w = Word::parse("xyz");
    double prev = 1;
    for (unsigned extra : {4u, 8u, 12u}) {
        auto ad = adapted_completion(w, 64, extra);
        auto [tp, tm] = theta_pair(w, ad.X);
        CHECK(intersection_number(ad.X, tp, tm) == QuadraticReal(1));
        double self = intersection_number(ad.X, tp, tp).to_double();
        CHECK(self >= 0);
        CHECK(self < prev);
        prev = self;
    }
    CHECK(prev <= 1e-8);
}

TEST_CASE("d_minus: small eigenvector, orthogonality, basis") {
    Word w = Word::parse("xyz");
    auto ad = adapted_completion(w, 64, 4);
    unsigned N = ad.contracting_power;
    if (word_to_matrix(w).det() == -1 && N % 2 == 1) ++N;
    Word g = w.power(static_cast<long>(N));
    auto P = pullback_matrix(g, ad.X).m;
    std::size_t n = P.size();

    // Prop 5.4(2): every column away from the contracting corner vanishes
    std::vector<std::size_t> live;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            if (P[i][j] != 0) {
                live.push_back(j);
                break;
            }
    REQUIRE(live.size() == 2);

    auto dm = d_minus(g, ad.X);
    auto lam = dynamical_degree(g).lambda1;
    auto x = coeffs(ad.X, dm);
    for (std::size_t i = 0; i < n; ++i) {
        QuadraticReal acc;
        for (std::size_t j = 0; j < n; ++j)
            if (P[i][j] != 0) acc = acc + QuadraticReal(Rational(P[i][j])) * x[j];
        CHECK(acc == x[i] / lam);  // exact eigen-identity
    }

    auto tm = theta_minus(g, ad.X);
    CHECK(intersection_number(ad.X, dm, tm).sign() == 0);

    // {theta+, D-} plus the off-corner vertex divisors form a basis
    auto tp = theta_plus(g, ad.X);
    std::vector<std::vector<double>> B;
    auto push = [&](const DivisorAtInfinity& d) {
        std::vector<double> row(n, 0);
        for (const auto& [v, c] : d.coeff) row[ad.X.index_of(v)] = c.to_double();
        B.push_back(row);
    };
    push(tp);
    push(dm);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == live[0] || j == live[1]) continue;
        std::vector<double> row(n, 0);
        row[j] = 1;
        B.push_back(row);
    }
    REQUIRE(B.size() == n);
    double det = 1;  // plain elimination; exact rank is overkill here
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(B[i][k]) > std::abs(B[piv][k])) piv = i;
        std::swap(B[piv], B[k]);
        det *= B[k][k];
        if (B[k][k] == 0) break;
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = B[i][k] / B[k][k];
            for (std::size_t j = k; j < n; ++j) B[i][j] -= f * B[k][j];
        }
    }
    CHECK(std::abs(det) > 1e-9);

    CHECK_THROWS_AS(d_minus(Word(), ad.X), NotAdapted);
}

TEST_CASE("intersection numbers: base pairings, bilinearity, projection formula") {
    auto X = CyclicCompletion::base();
    auto e = [&](int i) {
        std::vector<int> v(3, 0);
        v[static_cast<std::size_t>(i)] = 1;
        return from_ints(X, v);
    };
    CHECK(intersection_number(X, e(0), e(0)) == QuadraticReal(-1));
    CHECK(intersection_number(X, e(0), e(1)) == QuadraticReal(1));

    std::mt19937 rng(7);
    auto rnd = [&] {
        std::vector<int> v(3);
        for (auto& c : v) c = static_cast<int>(rng() % 11) - 5;
        return v;
    };
    for (int t = 0; t < 20; ++t) {
        auto a = rnd(), b = rnd(), c = rnd();
        auto A = from_ints(X, a), Bv = from_ints(X, b), C = from_ints(X, c);
        CHECK(intersection_number(X, A, Bv) == intersection_number(X, Bv, A));
        std::vector<int> bc(3);
        for (int i = 0; i < 3; ++i) bc[static_cast<std::size_t>(i)] =
            b[static_cast<std::size_t>(i)] + c[static_cast<std::size_t>(i)];
        CHECK(intersection_number(X, A, from_ints(X, bc)) ==
              intersection_number(X, A, Bv) + intersection_number(X, A, C));

        // total transform through the blow-up of corner 0: the two corner
        // divisors acquire the exceptional with multiplicity 1
        auto Y = X.blow_up(0);
        auto pull = [&](const std::vector<int>& v) {
            return from_ints(Y, {v[0], v[0] + v[1], v[1], v[2]});
        };
        CHECK(intersection_number(Y, pull(a), pull(b)) == intersection_number(X, A, Bv));
    }
}

TEST_CASE("algebraic stability on adapted completions, and its failure") {
    auto ad = adapted_completion(Word::parse("xyz"));
    CHECK(stability_check(Word::parse("xyz"), ad.X, 4));
    CHECK(stability_check(Word(), CyclicCompletion::base(), 4));
    // both fixed points of xyxzx sit in one arc of the triangle: un-separated
    CHECK_FALSE(stability_check(Word::parse("xyxzx"), CyclicCompletion::base(), 4));
    auto ad2 = adapted_completion(Word::parse("xyxzx"));
    CHECK(stability_check(Word::parse("xyxzx"), ad2.X, 4));
}

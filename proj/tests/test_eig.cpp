#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatlab/eig.hpp"
#include "quatlab/random_gen.hpp"

#include <algorithm>

using namespace quatlab;

namespace {

double root_set_distance(std::vector<Cd> got, std::vector<Cd> want) {
    // greedy matching is fine at the separations used here
    double worst = 0;
    for (const Cd& w : want) {
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < got.size(); ++i)
            if (abs(got[i] - w) < bd) {
                bd = abs(got[i] - w);
                best = i;
            }
        worst = std::max(worst, bd);
        got.erase(got.begin() + best);
    }
    return worst;
}

}  // namespace

TEST_CASE("poly_roots: quadratic and quartic with known roots") {
    // z^2 + 1
    CHECK(root_set_distance(poly_roots({{1, 0}, {0, 0}}), {{0, 1}, {0, -1}}) < 1e-12);
    // (z-1)(z+1)(z-2)(z+2) = z^4 - 5 z^2 + 4
    CHECK(root_set_distance(poly_roots({{4, 0}, {0, 0}, {-5, 0}, {0, 0}}),
                            {{1, 0}, {-1, 0}, {2, 0}, {-2, 0}}) < 1e-10);
    // cubic with a complex pair: (z-2)(z^2+2z+5)
    CHECK(root_set_distance(poly_roots({{-10, 0}, {1, 0}, {0, 0}}),
                            {{2, 0}, {-1, 2}, {-1, -2}}) < 1e-10);
}

TEST_CASE("poly_roots survive a repeated root") {
    // (z-1)^2 (z+1)^2 = z^4 - 2z^2 + 1
    CHECK(root_set_distance(poly_roots({{1, 0}, {0, 0}, {-2, 0}, {0, 0}}),
                            {{1, 0}, {1, 0}, {-1, 0}, {-1, 0}}) < 1e-6);
}

TEST_CASE("random monic polynomials evaluate to zero at the returned roots") {
    Rng rng(101);
    for (int deg = 2; deg <= 6; ++deg)
        for (int t = 0; t < 10; ++t) {
            std::vector<Cd> c(deg);
            for (auto& z : c) z = {rng.uniform(-2, 2), rng.uniform(-2, 2)};
            auto roots = poly_roots(c);
            REQUIRE(roots.size() == static_cast<std::size_t>(deg));
            for (const Cd& r : roots) {
                Cd v{1, 0}, acc = c[0];
                for (int k = 1; k < deg; ++k) {
                    v = v * r;
                    acc += c[k] * v;
                }
                acc += v * r;  // leading term
                CHECK(abs(acc) < 1e-7);
            }
        }
}

TEST_CASE("eigenvalues of diag(i, 2j)") {
    QMatrixD A(2, 2);
    A(0, 0) = Quaternion<double>::i();
    A(1, 1) = Quaternion<double>::j() * 2.0;
    auto e = eigenvalues(A);
    REQUIRE(e.size() == 2);
    CHECK(abs(e[0] - Cd{0, 1}) < 1e-12);
    CHECK(abs(e[1] - Cd{0, 2}) < 1e-12);
}

TEST_CASE("eigenvalues fold into the closed upper half plane, sorted") {
    QMatrixD A(2, 2);
    A(0, 0) = {3, -4, 0, 0};  // representative 3 + 4i
    A(1, 1) = {1, 2, 0, 0};
    A(0, 1) = {0, 0, 5, 1};
    auto e = eigenvalues(A);
    REQUIRE(e.size() == 2);
    CHECK(abs(e[0] - Cd{1, 2}) < 1e-9);
    CHECK(abs(e[1] - Cd{3, 4}) < 1e-9);
    for (const auto& z : e) CHECK(z.im >= 0);
}

TEST_CASE("eigenvalues invariant under unitary conjugation") {
    Rng rng(7);
    for (int t = 0; t < 25; ++t) {
        QMatrixD A = random_qmatrix(rng, 2);
        QMatrixD U = random_unitary(rng, 2);
        auto e1 = eigenvalues(A);
        auto e2 = eigenvalues(U * A * adjoint(U));
        CHECK(root_set_distance(e2, e1) < 1e-7 * (1.0 + frobenius_norm(A)));
    }
}

TEST_CASE("eigenvector residual is small") {
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
        QMatrixD A = random_generic(rng, 2);
        for (const Cd& lam : eigenvalues(A)) {
            auto v = eigenvector(A, lam);
            REQUIRE(v.size() == 2);
            CHECK(vec_norm(v) == doctest::Approx(1.0));
            Quaternion<double> ql{lam.re, lam.im, 0, 0};
            std::vector<Quaternion<double>> r(2);
            for (int i = 0; i < 2; ++i)
                r[i] = A(i, 0) * v[0] + A(i, 1) * v[1] - v[i] * ql;
            CHECK(vec_norm(r) < 1e-8 * (1.0 + frobenius_norm(A)));
        }
    }
}

TEST_CASE("schur: unitary, triangular, reproduces A") {
    Rng rng(11);
    for (std::size_t n = 2; n <= 3; ++n)
        for (int t = 0; t < 15; ++t) {
            QMatrixD A = random_qmatrix(rng, n);
            auto [U, T] = schur(A);
            CHECK(is_unitary(U, 1e-8));
            double lower = 0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < i; ++j) lower += abs(T(i, j));
            CHECK(lower < 1e-7 * (1.0 + frobenius_norm(A)));
            CHECK(frobenius_norm(U * A * adjoint(U) - T) < 1e-7 * (1.0 + frobenius_norm(A)));
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(T(i, i).b >= -1e-9);
                CHECK(std::fabs(T(i, i).c) < 1e-7);
                CHECK(std::fabs(T(i, i).d) < 1e-7);
            }
        }
}

TEST_CASE("schur respects the requested diagonal order") {
    Rng rng(13);
    QMatrixD A = random_generic(rng, 2);
    auto e = eigenvalues(A);
    auto fwd = schur(A, {0, 1});
    auto rev = schur(A, {1, 0});
    CHECK(abs(Cd{fwd.T(0, 0).a, fwd.T(0, 0).b} - e[0]) < 1e-7);
    CHECK(abs(Cd{rev.T(0, 0).a, rev.T(0, 0).b} - e[1]) < 1e-7);
}

TEST_CASE("size bound is enforced") {
    Rng rng(15);
    QMatrixD A = random_qmatrix(rng, 7);
    CHECK_THROWS_AS(eigenvalues(A), std::invalid_argument);
    CHECK(eigenvalues(A, 7).size() == 7);
}

TEST_CASE("complexifying unit rotates the pure part onto i") {
    Rng rng(17);
    for (int t = 0; t < 30; ++t) {
        Quaternion<double> q = rng.quaternion();
        Quaternion<double> u = complexifying_unit(q);
        CHECK(abs(u) == doctest::Approx(1.0));
        Quaternion<double> c = conjugate_by(u, q);
        CHECK(c.a == doctest::Approx(q.a));
        CHECK(c.b == doctest::Approx(abs(q.pure_part())));
        CHECK(std::fabs(c.c) < 1e-9);
        CHECK(std::fabs(c.d) < 1e-9);
    }
    // already complex with positive imaginary part: u = 1
    auto u = complexifying_unit({2, 3, 0, 0});
    CHECK(abs(u - Quaternion<double>::one()) < 1e-12);
}

TEST_CASE("solve_complex on a known system") {
    CMatrixD M(2, 2);
    M(0, 0) = {1, 0};
    M(0, 1) = {0, 1};
    M(1, 0) = {0, -1};
    M(1, 1) = {2, 0};
    std::vector<Cd> b = {{1, 1}, {0, 0}};
    auto x = solve_complex(M, b);
    Cd r0 = M(0, 0) * x[0] + M(0, 1) * x[1] - b[0];
    Cd r1 = M(1, 0) * x[0] + M(1, 1) * x[1] - b[1];
    CHECK(abs(r0) + abs(r1) < 1e-12);
    CMatrixD S(2, 2);  // singular
    S(0, 0) = {1, 0};
    S(0, 1) = {1, 0};
    S(1, 0) = {1, 0};
    S(1, 1) = {1, 0};
    CHECK_THROWS(solve_complex(S, b));
}

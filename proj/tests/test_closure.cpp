#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatlab/closure.hpp"
#include "quatlab/identities.hpp"
#include "quatlab/random_gen.hpp"

using namespace quatlab;

namespace {

using QQ = Quaternion<Rat>;

QMatrixQ e01() {
    QMatrixQ M(2, 2);
    M(0, 1) = QQ::one();
    return M;
}
QMatrixQ e10() {
    QMatrixQ M(2, 2);
    M(1, 0) = QQ::one();
    return M;
}

std::pair<QMatrixQ, QMatrixQ> quaternionic_cube_pair() {
    QMatrixQ A(2, 2), B(2, 2);
    A(0, 1) = QQ::one();
    A(1, 1) = QQ::j();
    B(0, 1) = QQ::one();
    B(1, 0) = QQ::i();
    return {A, B};
}

}  // namespace

TEST_CASE("closure dimensions of standard algebras") {
    CHECK(algebra_closure({}).dimension() == 1);  // span of I

    QMatrixQ P(2, 2);  // idempotent E11: closure = span{I, E11}
    P(0, 0) = QQ::one();
    CHECK(algebra_closure({P}).dimension() == 2);

    // E12, E21 generate M2(R)
    CHECK(algebra_closure({e01(), e10()}).dimension() == 4);

    // the nonzero-cube pair generates all of M2(H)
    auto [A, B] = quaternionic_cube_pair();
    CHECK(algebra_closure({A, B}).dimension() == 16);

    // generic triangular pair generates the full upper-triangular algebra
    Rng rng(23);
    QMatrixQ T1 = random_integer_upper(rng, 2, 3);
    QMatrixQ T2 = random_integer_upper(rng, 2, 3);
    CHECK(algebra_closure({T1, T2}).dimension() <= 12);
}

TEST_CASE("closure rejects shape mismatches") {
    CHECK_THROWS_AS(algebra_closure({QMatrixQ(2, 2), QMatrixQ(3, 3)}), std::invalid_argument);
    CHECK_THROWS_AS(algebra_closure({QMatrixQ(2, 3)}), std::invalid_argument);
}

TEST_CASE("span membership and sampling") {
    auto alg = algebra_closure({e01(), e10()});
    Rng rng(29);
    for (int t = 0; t < 20; ++t) CHECK(in_span(alg, span_sample(alg, rng)));
    QMatrixQ J(2, 2);
    J(0, 0) = QQ::j();
    CHECK_FALSE(in_span(alg, J));  // M2(R) has no j
    CHECK(in_span(alg, QMatrixQ::identity(2)));
}

TEST_CASE("closure is closed under products") {
    Rng rng(31);
    auto [A, B] = quaternionic_cube_pair();
    auto alg = algebra_closure({A, B});
    for (int t = 0; t < 10; ++t) {
        QMatrixQ X = span_sample(alg, rng), Y = span_sample(alg, rng);
        CHECK(in_span(alg, X * Y));
    }
}

TEST_CASE("commutator-square refuter") {
    Rng rng(37);
    // triangular-conjugate algebra: Tr([A,B]^2) <= 0 throughout
    auto [L, Linv] = random_unipotent_lower(rng, 2, 2);
    QMatrixQ T1 = random_integer_upper(rng, 2, 3);
    QMatrixQ T2 = random_integer_upper(rng, 2, 3);
    auto tri = algebra_closure({L * T1 * Linv, L * T2 * Linv});
    CHECK(tr_comm_square_test(tri, 100, rng).pass);

    // M2(R): Tr([A,B]^2) = 4 is reachable
    auto full = algebra_closure({e01(), e10()});
    auto res = tr_comm_square_test(full, 500, rng);
    CHECK_FALSE(res.pass);
    CHECK(qtrace(mat_pow(commutator(res.A, res.B), 2)) == res.value);
    CHECK(res.value > 0);
}

TEST_CASE("nilpotent closure under sums holds for triangular algebras") {
    Rng rng(41);
    QMatrixQ T1 = random_integer_upper(rng, 2, 3);
    QMatrixQ T2 = random_integer_upper(rng, 2, 3);
    auto tri = algebra_closure({T1, T2});
    CHECK(nilpotent_closure_test(tri, NilpotentMode::sum, 50, rng).pass);
    CHECK(nilpotent_closure_test(tri, NilpotentMode::product, 20, rng).pass);
}

TEST_CASE("nilpotent sum fails in the full matrix algebra") {
    Rng rng(43);
    auto full = algebra_closure({e01(), e10()});
    auto res = nilpotent_closure_test(full, NilpotentMode::sum, 50, rng);
    CHECK_FALSE(res.pass);
    CHECK(is_nilpotent(res.A));
    CHECK(is_nilpotent(res.B));
    CHECK_FALSE(is_nilpotent(res.A + res.B));
}

TEST_CASE("quasi-triangularizable: triangular-conjugate closures") {
    Rng rng(47);
    auto [L, Linv] = random_unipotent_lower(rng, 2, 2);
    QMatrixQ T1 = random_integer_upper(rng, 2, 2);
    QMatrixQ T2 = random_integer_upper(rng, 2, 2);
    auto alg = algebra_closure({L * T1 * Linv, L * T2 * Linv});
    CHECK(is_quasi_triangularizable(alg));
    // decision agrees with random sampling of the cube form
    for (int t = 0; t < 100; ++t)
        CHECK(tr_comm_cube(span_sample(alg, rng), span_sample(alg, rng)) == 0);
}

TEST_CASE("quasi-triangularizable: complex-block algebras") {
    Rng rng(53);
    QMatrixQ A(2, 2), B(2, 2);
    for (auto& q : A.entries) q = QQ(Rat(rng.integer(3)), Rat(rng.integer(3)));
    for (auto& q : B.entries) q = QQ(Rat(rng.integer(3)), Rat(rng.integer(3)));
    auto alg = algebra_closure({A, B});
    CHECK(alg.dimension() <= 8);
    CHECK(is_quasi_triangularizable(alg));
}

TEST_CASE("quasi-triangularizability fails for the nonzero-cube closure") {
    auto [A, B] = quaternionic_cube_pair();
    auto alg = algebra_closure({A, B});
    REQUIRE(alg.dimension() == 16);
    CHECK_THROWS_AS(is_quasi_triangularizable(alg), DimensionTooLarge);  // default cap 12
    CHECK_FALSE(is_quasi_triangularizable(alg, 16));
    CHECK(tr_comm_cube(A, B) != 0);  // matching sample witness
}

TEST_CASE("single-generator algebras are quasi-triangularizable") {
    Rng rng(59);
    auto alg = algebra_closure({random_integer_qmatrix(rng, 2, 3)});
    CHECK(is_quasi_triangularizable(alg));
    for (int t = 0; t < 50; ++t)
        CHECK(tr_comm_cube(span_sample(alg, rng), span_sample(alg, rng)) == 0);
}

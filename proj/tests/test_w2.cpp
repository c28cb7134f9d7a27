#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "quatlab/random_gen.hpp"
#include "quatlab/w2.hpp"

using namespace quatlab;

namespace {

using QQ = Quaternion<Rat>;

double witness_residual(const W2Verdict& v, const QMatrixD& A, const QMatrixD& B) {
    QMatrixD TA = v.P * A * v.Pinv;
    QMatrixD TB = v.P * B * v.Pinv;
    return abs(TA(1, 0)) + abs(TB(1, 0));
}

QMatrixD member_pair_images(Rng& rng, QMatrixD& A, QMatrixD& B) {
    QMatrixD T1 = random_upper(rng, 2), T2 = random_upper(rng, 2);
    QMatrixD U = random_unitary(rng, 2);
    A = adjoint(U) * T1 * U;
    B = adjoint(U) * T2 * U;
    return U;
}

}  // namespace

TEST_CASE("distinct-eigenvalue members are detected with validated witnesses") {
    Rng rng(3);
    for (int t = 0; t < 60; ++t) {
        QMatrixD A, B;
        member_pair_images(rng, A, B);
        auto v = w2_membership(A, B);
        CHECK(v.member);
        REQUIRE(v.has_witness);
        CHECK(witness_residual(v, A, B) < 1e-7);
    }
}

TEST_CASE("the projection/swap pair is rejected") {
    QMatrixD A(2, 2), B(2, 2);
    A(0, 0) = Quaternion<double>::one();
    B(0, 1) = Quaternion<double>::one();
    B(1, 0) = Quaternion<double>::one();
    auto v = w2_membership(A, B);
    CHECK_FALSE(v.member);
    CHECK_FALSE(v.has_witness);
}

TEST_CASE("random generic pairs are almost never members") {
    Rng rng(5);
    int members = 0;
    for (int t = 0; t < 40; ++t) {
        QMatrixD A = random_qmatrix(rng, 2), B = random_qmatrix(rng, 2);
        if (w2_membership(A, B).member) ++members;
    }
    CHECK(members == 0);
}

TEST_CASE("real scalar matrices pair with anything") {
    Rng rng(7);
    QMatrixD S = QMatrixD::identity(2).scaled(Quaternion<double>(2.5));
    for (int t = 0; t < 10; ++t) {
        QMatrixD B = random_qmatrix(rng, 2);
        auto v = w2_membership(S, B);
        CHECK(v.member);
        CHECK(witness_residual(v, S, B) < 1e-7);
    }
    // paired with a repeated-eigenvalue partner the scalar branch itself fires
    QMatrixD J(2, 2);
    J(0, 0) = {1, 0, 0, 0};
    J(0, 1) = {0, 1, 2, 0};
    J(1, 1) = {1, 0, 0, 0};
    auto v = w2_membership(S, J);
    CHECK(v.member);
    CHECK(v.case_tag == "scalar");
    CHECK(witness_residual(v, S, J) < 1e-7);
}

TEST_CASE("non-real scalar paired with an upper-triangular complex matrix") {
    // iI preserves exactly the complex-ratio lines; an upper triangular
    // complex B shares (1, 0).
    QMatrixD A(2, 2), B(2, 2);
    A(0, 0) = Quaternion<double>::i();
    A(1, 1) = Quaternion<double>::i();
    B(0, 0) = {1, 2, 0, 0};
    B(0, 1) = {0, 1, 0, 0};
    B(1, 1) = {3, -1, 0, 0};
    auto v = w2_membership(A, B);
    CHECK(v.member);
    CHECK(witness_residual(v, A, B) < 1e-7);
}

TEST_CASE("non-real scalar with a repeated-eigenvalue partner sharing e1") {
    // A = iI, B = [[i, 2k],[0, i]]: both have the single eigenvalue class of
    // i, and the line e1*H is invariant for both.
    QMatrixD A(2, 2), B(2, 2);
    A(0, 0) = Quaternion<double>::i();
    A(1, 1) = Quaternion<double>::i();
    B(0, 0) = Quaternion<double>::i();
    B(1, 1) = Quaternion<double>::i();
    B(0, 1) = {0, 0, 0, 2};
    auto v = w2_membership(A, B);
    CHECK(v.member);
    CHECK(witness_residual(v, A, B) < 1e-7);
}

TEST_CASE("repeated-eigenvalue members via conjugated triangular pairs") {
    Rng rng(11);
    int done = 0;
    while (done < 20) {
        // both matrices share the diagonal class: T1 = [[q, r],[0, q']] with
        // q, q' in the same similarity class
        Quaternion<double> q = rng.quaternion();
        QMatrixD T1(2, 2), T2(2, 2);
        Quaternion<double> u = rng.unit_quaternion();
        T1(0, 0) = q;
        T1(1, 1) = conjugate_by(u, q);
        T1(0, 1) = rng.quaternion();
        T2 = random_upper(rng, 2);
        QMatrixD U = random_unitary(rng, 2);
        QMatrixD A = adjoint(U) * T1 * U;
        QMatrixD B = adjoint(U) * T2 * U;
        auto v = w2_membership(A, B);
        CHECK(v.member);
        if (v.has_witness) CHECK(witness_residual(v, A, B) < 1e-7);
        ++done;
    }
}

TEST_CASE("verdict is invariant under unitary conjugation") {
    Rng rng(13);
    for (int t = 0; t < 25; ++t) {
        QMatrixD A, B;
        member_pair_images(rng, A, B);
        QMatrixD C = random_qmatrix(rng, 2), D = random_qmatrix(rng, 2);
        for (int c = 0; c < 4; ++c) {
            QMatrixD V = random_unitary(rng, 2);
            CHECK(w2_membership(V * A * adjoint(V), V * B * adjoint(V)).member);
            CHECK_FALSE(w2_membership(V * C * adjoint(V), V * D * adjoint(V)).member);
        }
    }
}

TEST_CASE("fiber check on diagonal-generic instances") {
    Rng rng(17);
    QMatrixQ A(2, 2);
    A(0, 0) = QQ(Rat(1), Rat(2), Rat(0), Rat(0));
    A(1, 1) = QQ(Rat(-1), Rat(0), Rat(3), Rat(0));

    // upper triangular B: member through the identity permutation
    QMatrixQ B = random_integer_upper(rng, 2, 3);
    CHECK(fiber_check(A, B));

    // lower triangular B: member through the swap permutation
    QMatrixQ C(2, 2);
    C(0, 0) = QQ(Rat(2));
    C(1, 0) = QQ(Rat(0), Rat(1));
    C(1, 1) = QQ(Rat(5));
    CHECK(fiber_check(A, C));

    // dense B: no permutation works
    QMatrixQ D = random_integer_qmatrix(rng, 2, 3);
    if (!D(0, 1).is_zero() && !D(1, 0).is_zero()) CHECK_FALSE(fiber_check(A, D));
}

TEST_CASE("fiber check agrees with the float membership test") {
    Rng rng(19);
    int checked = 0;
    while (checked < 40) {
        QMatrixQ A(2, 2);
        A(0, 0) = rng.integer_quaternion(3);
        A(1, 1) = rng.integer_quaternion(3);
        const auto &p = A(0, 0), &q = A(1, 1);
        if (p.a == q.a && p.pure_part().norm_sq() == q.pure_part().norm_sq()) continue;
        QMatrixQ B = (checked % 2 == 0) ? random_integer_upper(rng, 2, 3)
                                        : random_integer_qmatrix(rng, 2, 3);
        bool fib = fiber_check(A, B);
        bool mem = w2_membership(to_float(A), to_float(B)).member;
        CHECK(fib == mem);
        ++checked;
    }
}

TEST_CASE("fiber check input guards") {
    QMatrixQ A(2, 2);
    A(0, 0) = QQ::i();
    A(1, 1) = QQ::i();
    CHECK_THROWS_AS(fiber_check(A, QMatrixQ(2, 2)), NotGeneric);  // repeated class
    QMatrixQ D(2, 2);
    D(0, 1) = QQ::one();
    CHECK_THROWS_AS(fiber_check(D, QMatrixQ(2, 2)), NotGeneric);  // not diagonal
    // same class via conjugation: i vs j share (0, 1)
    QMatrixQ E(2, 2);
    E(0, 0) = QQ::i();
    E(1, 1) = QQ::j();
    CHECK_THROWS_AS(fiber_check(E, QMatrixQ(2, 2)), NotGeneric);
}

TEST_CASE("property suite passes on triangularizable samples") {
    Rng rng(23);
    for (int t = 0; t < 40; ++t) {
        auto [L, Linv] = random_unipotent_lower(rng, 2, 2);
        QMatrixQ X = L * random_integer_upper(rng, 2, 3) * Linv;
        QMatrixQ Y = L * random_integer_upper(rng, 2, 3) * Linv;
        auto rep = wn_property_suite(X, Y, 3, 3);
        CHECK(rep.all_pass);
        CHECK(rep.violations.empty());
    }
    // also for 3x3
    for (int t = 0; t < 10; ++t) {
        auto [L, Linv] = random_unipotent_lower(rng, 3, 2);
        QMatrixQ X = L * random_integer_upper(rng, 3, 2) * Linv;
        QMatrixQ Y = L * random_integer_upper(rng, 3, 2) * Linv;
        CHECK(wn_property_suite(X, Y, 2, 2).all_pass);
    }
}

TEST_CASE("property suite flags the rotation pair") {
    // A = E11, B = E12 - E21: [A,B] = E12 + E21 squares to I, Tr = 4 > 0
    QMatrixQ A(2, 2), B(2, 2);
    A(0, 0) = QQ::one();
    B(0, 1) = QQ::one();
    B(1, 0) = -QQ::one();
    auto rep = wn_property_suite(A, B, 1, 1);
    CHECK_FALSE(rep.all_pass);
    REQUIRE_FALSE(rep.violations.empty());
    CHECK(rep.violations.front().value == 4);
}

TEST_CASE("property suite cannot separate the projection/swap pair") {
    // this non-member satisfies every sign and power-word condition the suite
    // knows about: [A,B] = E12 - E21 squares to -I
    QMatrixQ A(2, 2), B(2, 2);
    A(0, 0) = QQ::one();
    B(0, 1) = QQ::one();
    B(1, 0) = QQ::one();
    CHECK(wn_property_suite(A, B, 3, 3).all_pass);
    CHECK_FALSE(w2_membership(to_float(A), to_float(B)).member);
}

TEST_CASE("friedland conditions on member pairs") {
    Rng rng(29);
    for (int t = 0; t < 30; ++t) {
        CMatrixQ A(2, 2), B(2, 2);
        // common eigenvector e1: both upper triangular
        A(0, 0) = rng.gaussian_rational(3);
        A(0, 1) = rng.gaussian_rational(3);
        A(1, 1) = rng.gaussian_rational(3);
        B(0, 0) = rng.gaussian_rational(3);
        B(0, 1) = rng.gaussian_rational(3);
        B(1, 1) = rng.gaussian_rational(3);
        auto r = friedland_check(A, B);
        CHECK(r.a);
        CHECK(r.consistent());
    }
}

TEST_CASE("friedland conditions on generic non-members") {
    Rng rng(31);
    for (int t = 0; t < 30; ++t) {
        CMatrixQ A(2, 2), B(2, 2);
        for (auto& z : A.entries) z = rng.gaussian_rational(4);
        for (auto& z : B.entries) z = rng.gaussian_rational(4);
        auto r = friedland_check(A, B);
        CHECK(r.consistent());
    }
}

TEST_CASE("friedland: scalar matrices always share an eigenvector") {
    CMatrixQ S = CMatrixQ::identity(2).scaled(Cx<Rat>(Rat(3), Rat(1)));
    Rng rng(37);
    CMatrixQ B(2, 2);
    for (auto& z : B.entries) z = rng.gaussian_rational(3);
    auto r = friedland_check(S, B);
    CHECK(r.a);
    CHECK(r.consistent());
}

TEST_CASE("pure-imaginary spectrum conditions, exact") {
    // diag(i, 2j): spectrum {i, 2i}
    QMatrixQ A(2, 2);
    A(0, 0) = QQ::i();
    A(1, 1) = QQ(Rat(0), Rat(0), Rat(2), Rat(0));
    auto r = pure_imaginary_eig_check(A);
    CHECK(r.cond1);
    CHECK(r.cond2);
    CHECK(r.cond3);
    CHECK(r.all());

    // boundary case diag(i, i): (Tr A^2)^2 = 16 = 4 Tr A^4
    QMatrixQ D(2, 2);
    D(0, 0) = QQ::i();
    D(1, 1) = QQ::i();
    CHECK(pure_imaginary_eig_check(D).all());

    // identity: spectrum {1, 1} is real
    CHECK_FALSE(pure_imaginary_eig_check(QMatrixQ::identity(2)).all());
}

TEST_CASE("pure-imaginary iff matches the computed spectrum") {
    Rng rng(41);
    // positives: unitary conjugates of pure-imaginary upper triangular forms
    for (int t = 0; t < 20; ++t) {
        QMatrixD T(2, 2);
        T(0, 0) = {0, rng.uniform(0.2, 2), 0, 0};
        T(1, 1) = {0, rng.uniform(0.2, 2), 0, 0};
        T(0, 1) = {rng.uniform(-1, 1), rng.uniform(-1, 1), 0, 0};
        // the triangular form must itself have pure-imaginary diagonal AND
        // satisfy the trace conditions; keep the off-diagonal complex so the
        // spectrum is exactly the diagonal
        QMatrixD U = random_unitary(rng, 2);
        QMatrixD A = adjoint(U) * T * U;
        CHECK(spectrum_is_pure_imaginary(A));
        CHECK(pure_imaginary_eig_check(A).all());
    }
    // negatives: shifted matrices have an eigenvalue with real part 1
    for (int t = 0; t < 20; ++t) {
        QMatrixD A = random_qmatrix(rng, 2);
        QMatrixD S = A + QMatrixD::identity(2).scaled(Quaternion<double>(3.0));
        CHECK_FALSE(spectrum_is_pure_imaginary(S));
        CHECK_FALSE(pure_imaginary_eig_check(S).all());
    }
}

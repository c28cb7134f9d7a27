#include "quatlab/canon.hpp"

namespace quatlab {

namespace {

bool lex_less(const Cd& x, const Cd& y) {
    return x.re != y.re ? x.re < y.re : x.im < y.im;
}

Quaternion<double> as_quat(const Cd& z) { return {z.re, z.im, 0, 0}; }

}  // namespace

CanonicalResult canonical_form(const QMatrixD& A) {
    if (A.rows != 2 || A.cols != 2)
        throw std::invalid_argument("canonical_form: need a 2x2 matrix");
    auto eigs = eigenvalues(A);
    std::vector<std::size_t> order = lex_less(eigs[0], eigs[1])
                                         ? std::vector<std::size_t>{0, 1}
                                         : std::vector<std::size_t>{1, 0};
    auto [U, T] = schur(A, order);

    double scale = frobenius_norm(to_float(A)) + 1.0;
    const double real_tol = 1e-9 * scale;
    Cd alpha{T(0, 0).a, std::max(0.0, T(0, 0).b)};
    Cd beta{T(1, 1).a, std::max(0.0, T(1, 1).b)};
    if (alpha.im < real_tol) alpha.im = 0;
    if (beta.im < real_tol) beta.im = 0;
    Quaternion<double> z = T(0, 1);

    // Diagonal conjugation diag(u, v) sends z to u z v^{-1} and fixes the
    // diagonal when u commutes with alpha and v with beta.
    Quaternion<double> u = Quaternion<double>::one(), v = Quaternion<double>::one();
    double znorm = abs(z);
    if (znorm > 1e-14 * scale) {
        if (alpha.im == 0) {
            // u z real nonnegative; beta untouched (v = 1)
            u = z.conj() * (1.0 / znorm);
        } else if (beta.im == 0) {
            v = z * (1.0 / znorm);
        } else {
            // z = c1 + j c2 (complex c1, c2); complex phases u = e^{i th},
            // v = e^{i ps} give u z v^{-1} = |c1| + j |c2| when
            // th - ps = -arg c1 and -th - ps = -arg c2.
            double arg1 = std::atan2(z.b, z.a);
            double arg2 = std::atan2(-z.d, z.c);
            double th = (arg2 - arg1) / 2.0;
            double ps = (arg1 + arg2) / 2.0;
            u = {std::cos(th), std::sin(th), 0, 0};
            v = {std::cos(ps), std::sin(ps), 0, 0};
        }
    }
    QMatrixD D(2, 2);
    D(0, 0) = u;
    D(1, 1) = v;
    QMatrixD Ufull = D * U;
    QMatrixD K = Ufull * A * adjoint(Ufull);

    CanonicalUpper2 form;
    form.alpha = alpha;
    form.beta = beta;
    form.z1 = std::max(0.0, K(0, 1).a);
    form.z3 = (alpha.im == 0 || beta.im == 0) ? 0.0 : std::max(0.0, K(0, 1).c);

    CanonicalResult res;
    res.form = form;
    res.unitary = Ufull;
    res.p = invariants(A);
    res.residual = frobenius_norm(K - form.matrix());
    return res;
}

std::vector<std::pair<QMatrixD, QMatrixD>> table1_witnesses() {
    const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s2 = std::sqrt(2.0);
    auto diag = [](Quaternion<double> a, Quaternion<double> b) {
        QMatrixD M(2, 2);
        M(0, 0) = a;
        M(1, 1) = b;
        return M;
    };
    auto upper = [](Quaternion<double> a, Quaternion<double> z, Quaternion<double> b) {
        QMatrixD M(2, 2);
        M(0, 0) = a;
        M(0, 1) = z;
        M(1, 1) = b;
        return M;
    };
    std::vector<std::pair<QMatrixD, QMatrixD>> rows;
    rows.emplace_back(diag({s3, -1, 0, 0}, {-s3, 1, 0, 0}),
                      diag({-s3, 1, 0, 0}, {-s3, -1, 0, 0}));
    rows.emplace_back(upper({2, 1, 0, 0}, {1, 0, 0, 0}, {-2, -1, 0, 0}),
                      upper({1, 2, 0, 0}, {-1, 0, 0, 0}, {-1, -2, 0, 0}));
    rows.emplace_back(diag({-1, 2, 0, 0}, {1, 0, 0, 0}), diag({-1, 0, 0, 0}, {1, 2, 0, 0}));
    rows.emplace_back(upper({0, 0, 0, 0}, {s6, 0, 1, 0}, {0, s2, 0, 0}),
                      upper({0, 1, 0, 0}, {s3, 0, 2, 0}, {0, -1, 0, 0}));
    rows.emplace_back(QMatrixD(2, 2), upper({0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}));
    rows.emplace_back(upper({0, 1, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}),
                      upper({0, 1, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}));
    return rows;
}

std::vector<std::pair<int, std::pair<QMatrixQ, QMatrixQ>>> table1_witnesses_exact() {
    auto q = [](long a, long b, long c, long d) {
        return Quaternion<Rat>(Rat(a), Rat(b), Rat(c), Rat(d));
    };
    auto upper = [&](Quaternion<Rat> a, Quaternion<Rat> z, Quaternion<Rat> b) {
        QMatrixQ M(2, 2);
        M(0, 0) = a;
        M(0, 1) = z;
        M(1, 1) = b;
        return M;
    };
    std::vector<std::pair<int, std::pair<QMatrixQ, QMatrixQ>>> rows;
    rows.push_back({2, {upper(q(2, 1, 0, 0), q(1, 0, 0, 0), q(-2, -1, 0, 0)),
                        upper(q(1, 2, 0, 0), q(-1, 0, 0, 0), q(-1, -2, 0, 0))}});
    rows.push_back({3, {upper(q(-1, 2, 0, 0), q(0, 0, 0, 0), q(1, 0, 0, 0)),
                        upper(q(-1, 0, 0, 0), q(0, 0, 0, 0), q(1, 2, 0, 0))}});
    rows.push_back({5, {QMatrixQ(2, 2), upper(q(0, 0, 0, 0), q(1, 0, 0, 0), q(0, 0, 0, 0))}});
    rows.push_back({6, {upper(q(0, 1, 0, 0), q(1, 0, 0, 0), q(0, 1, 0, 0)),
                        upper(q(0, 1, 0, 0), q(0, 0, 1, 0), q(0, 1, 0, 0))}});
    return rows;
}

}  // namespace quatlab

#include "quatlab/w2.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace quatlab {

namespace {

constexpr double kTol = 1e-8;
constexpr double kGapTol = 1e-6;
constexpr double kValidateTol = 1e-7;

Cd z_complex(const Quaternion<double>& q) { return {q.a, q.b}; }
Cd z_jpart(const Quaternion<double>& q) { return {q.c, -q.d}; }

QMatrixD normalized(const QMatrixD& A) {
    double f = frobenius_norm(A);
    if (f < 1e-12) return A;
    return A.scaled(Quaternion<double>(1.0 / f));
}

// aI with real a: the only scalar shape for which any Schur frame of the
// other matrix keeps A upper triangular. Non-real scalars q I have a repeated
// non-real eigenvalue and go through the diagonalizable-repeated analysis.
bool is_real_scalar_matrix(const QMatrixD& A, double tol) {
    QMatrixD S(2, 2);
    S(0, 0) = Quaternion<double>(A(0, 0).a);
    S(1, 1) = S(0, 0);
    return frobenius_norm(A - S) < tol;
}

// Unitary with the given (normalized) first column.
QMatrixD unitary_from_column(std::vector<Quaternion<double>> w) {
    double n = vec_norm(w);
    for (auto& q : w) q = q * (1.0 / n);
    // second column: Gram-Schmidt on whichever basis vector is more independent
    std::vector<Quaternion<double>> v(2);
    for (int trial = 0; trial < 2; ++trial) {
        v = {Quaternion<double>{}, Quaternion<double>{}};
        v[trial == 0 ? 1 : 0] = Quaternion<double>::one();
        Quaternion<double> ip = w[0].conj() * v[0] + w[1].conj() * v[1];
        v[0] -= w[0] * ip;
        v[1] -= w[1] * ip;
        if (vec_norm(v) > 0.3) break;
    }
    double nv = vec_norm(v);
    v[0] = v[0] * (1.0 / nv);
    v[1] = v[1] * (1.0 / nv);
    QMatrixD Q(2, 2);
    Q(0, 0) = w[0];
    Q(1, 0) = w[1];
    Q(0, 1) = v[0];
    Q(1, 1) = v[1];
    return Q;
}

struct Frame {
    QMatrixD P = QMatrixD::identity(2);
    QMatrixD Pinv = QMatrixD::identity(2);

    void compose(const QMatrixD& Q, const QMatrixD& Qinv) {
        P = Q * P;
        Pinv = Pinv * Qinv;
    }
    void compose_unitary(const QMatrixD& U) { compose(U, adjoint(U)); }
};

double strict_lower(const QMatrixD& M) { return abs(M(1, 0)); }

W2Verdict finish(const QMatrixD& A, const QMatrixD& B, const Frame& f, bool member,
                 std::string tag) {
    W2Verdict v;
    v.member = member;
    v.case_tag = std::move(tag);
    if (member) {
        QMatrixD TA = f.P * A * f.Pinv;
        QMatrixD TB = f.P * B * f.Pinv;
        v.residual = strict_lower(TA) + strict_lower(TB);
        if (v.residual < kValidateTol) {
            v.has_witness = true;
            v.P = f.P;
            v.Pinv = f.Pinv;
        } else {
            v.member = false;  // candidate failed validation
        }
    }
    return v;
}

std::vector<Cd> quadratic_complex(const Cd& q2, const Cd& q1, const Cd& q0, double tol) {
    if (abs(q2) > tol) {
        Cd disc = sqrt(q1 * q1 - q2 * q0 * 4.0);
        Cd r1 = (-q1 + disc) / (q2 * 2.0);
        Cd r2 = (-q1 - disc) / (q2 * 2.0);
        return {r1, r2};
    }
    if (abs(q1) > tol) return {(-q0) / q1};
    return {};
}

// Membership analysis with M carrying the eigenstructure; "other" rides along.
// Returns the verdict in terms of the ORIGINAL pair (the same P triangularizes
// both, so no un-swapping is needed).
W2Verdict analyze_distinct(const QMatrixD& M, const QMatrixD& other, const QMatrixD& A,
                           const QMatrixD& B) {
    for (auto ord : {std::vector<std::size_t>{0, 1}, std::vector<std::size_t>{1, 0}}) {
        auto sr = schur(M, ord);
        QMatrixD Bp = sr.U * other * adjoint(sr.U);
        if (strict_lower(Bp) < kTol) {
            Frame f;
            f.compose_unitary(sr.U);
            return finish(A, B, f, true, "distinct");
        }
    }
    return finish(A, B, Frame{}, false, "distinct");
}

W2Verdict analyze_repeated_diag(const QMatrixD& M, const QMatrixD& other, const QMatrixD& A,
                                const QMatrixD& B) {
    auto sr = schur(M);
    Frame f;
    f.compose_unitary(sr.U);
    Cd lam = z_complex(sr.T(0, 0));

    // Strip the j-part of the off-diagonal entry: for lam with Im > 0 the
    // similarity I + x E01 with x = j z2 / (2i Im lam) removes z = j z2.
    Quaternion<double> z = sr.T(0, 1);
    if (std::fabs(lam.im) > kTol && abs(z) > kTol) {
        Cd z2 = z_jpart(z);
        Cd x2 = z2 / Cd(0.0, 2.0 * lam.im);
        Quaternion<double> x{0, 0, x2.re, -x2.im};
        QMatrixD S = QMatrixD::identity(2), Sinv = QMatrixD::identity(2);
        S(0, 1) = x;
        Sinv(0, 1) = -x;
        f.compose(S, Sinv);
    }

    QMatrixD Bp = f.P * other * f.Pinv;
    double btol = kTol * (1.0 + frobenius_norm(Bp));

    // Invariant directions of diag(lam, lam): (1, c) with complex c, and (0, 1).
    // B preserves (1, c) iff both the complex-part quadratic E1 and the j-part
    // condition E2 vanish at c.
    Cd u11 = z_complex(Bp(0, 0)), u12 = z_complex(Bp(0, 1));
    Cd u21 = z_complex(Bp(1, 0)), u22 = z_complex(Bp(1, 1));
    Cd v11 = z_jpart(Bp(0, 0)), v12 = z_jpart(Bp(0, 1));
    Cd v21 = z_jpart(Bp(1, 0)), v22 = z_jpart(Bp(1, 1));

    auto e2_at = [&](const Cd& c) {
        return v21 + v22 * c - v11 * c.conj() - v12 * (c.norm_sq());
    };

    std::vector<std::vector<Quaternion<double>>> candidates;
    auto add_c = [&](const Cd& c) {
        candidates.push_back({Quaternion<double>::one(), {c.re, c.im, 0, 0}});
    };

    Cd q2 = -u12, q1 = u22 - u11, q0 = u21;
    bool e1_trivial = abs(q2) < btol && abs(q1) < btol && abs(q0) < btol;
    if (!e1_trivial) {
        for (const Cd& c : quadratic_complex(q2, q1, q0, btol))
            if (abs(e2_at(c)) < btol * (1.0 + c.norm_sq())) add_c(c);
        if (abs(Bp(0, 1)) < btol)
            candidates.push_back({Quaternion<double>{}, Quaternion<double>::one()});
    } else {
        // Complex part of B is scalar here; the j-part block V acts on a
        // complex line spanned by w through V w, and the line is invariant iff
        // V w is parallel to conj(w). Equivalently the antilinear map
        // S w = conj(V w) fixes the line; S^2 = conj(V) V, so invariant lines
        // sit inside eigenlines of that product.
        CMatrixD V(2, 2);
        V(0, 0) = v11;
        V(0, 1) = v12;
        V(1, 0) = v21;
        V(1, 1) = v22;
        CMatrixD Vc(2, 2);
        for (std::size_t i = 0; i < 4; ++i) Vc.entries[i] = V.entries[i].conj();
        CMatrixD M2 = Vc * V;
        double vn = frobenius_norm(V);
        auto t_apply = [&](const Cd& w1, const Cd& w2) {
            Cd r1 = V(0, 0) * w1 + V(0, 1) * w2;
            Cd r2 = V(1, 0) * w1 + V(1, 1) * w2;
            return std::pair<Cd, Cd>{r1.conj(), r2.conj()};
        };
        auto add_if_invariant = [&](Cd w1, Cd w2) {
            double wn = std::sqrt(w1.norm_sq() + w2.norm_sq());
            if (wn < kTol) return;
            w1 = w1 * (1.0 / wn);
            w2 = w2 * (1.0 / wn);
            auto [r1, r2] = t_apply(w1, w2);
            if (abs(r1 * w2 - r2 * w1) < btol * (1.0 + vn))
                candidates.push_back({{w1.re, w1.im, 0, 0}, {w2.re, w2.im, 0, 0}});
        };
        Cd sigma = (M2(0, 0) + M2(1, 1)) * 0.5;
        CMatrixD Dev = M2;
        Dev(0, 0) -= sigma;
        Dev(1, 1) -= sigma;
        if (frobenius_norm(Dev) < btol * (1.0 + frobenius_norm(M2))) {
            if (vn < btol) {
                add_c(Cd{0, 0});  // B is (quaternion) scalar: every line works
            } else if (sigma.re > -btol * (1.0 + vn * vn)) {
                double s = std::sqrt(std::max(0.0, sigma.re));
                for (auto [w1, w2] : {std::pair<Cd, Cd>{{1, 0}, {0, 0}},
                                      std::pair<Cd, Cd>{{0, 0}, {1, 0}},
                                      std::pair<Cd, Cd>{{0, 1}, {0, 0}}}) {
                    auto [t1, t2] = t_apply(w1, w2);
                    Cd c1 = w1 * s + t1, c2 = w2 * s + t2;
                    if (std::sqrt(c1.norm_sq() + c2.norm_sq()) > kTol) {
                        add_if_invariant(c1, c2);
                        if (!candidates.empty()) break;
                    }
                    // sigma ~ 0 and T w0 = 0: the image of T is invariant
                    add_if_invariant(t1, t2);
                    if (!candidates.empty()) break;
                }
                if (candidates.empty() && s < kTol) {
                    // S^2 ~ 0: the image of S lies in the kernel of V
                    add_if_invariant(V(0, 0).conj(), V(1, 0).conj());
                    add_if_invariant(V(0, 1).conj(), V(1, 1).conj());
                }
            }
            // sigma < 0: an invariant line would force sigma = |t|^2 >= 0
        } else {
            // eigenlines of the 2x2 complex matrix M2
            for (const Cd& c : quadratic_complex(-M2(0, 1), M2(1, 1) - M2(0, 0), M2(1, 0),
                                                 btol * (1.0 + frobenius_norm(M2))))
                add_if_invariant({1, 0}, c);
            if (abs(M2(0, 1)) < btol * (1.0 + frobenius_norm(M2)))
                add_if_invariant({0, 0}, {1, 0});
        }
    }

    for (const auto& w : candidates) {
        QMatrixD Q = unitary_from_column(w);
        Frame g = f;
        g.compose(adjoint(Q), Q);
        W2Verdict v = finish(A, B, g, true, "repeated-diagonalizable");
        if (v.member) return v;
    }
    return finish(A, B, Frame{}, false, "repeated-diagonalizable");
}

W2Verdict analyze_nondiag(const QMatrixD& M, const QMatrixD& other, const QMatrixD& A,
                          const QMatrixD& B) {
    auto sr = schur(M);
    Frame f;
    f.compose_unitary(sr.U);
    QMatrixD Bp = f.P * other * f.Pinv;
    bool member = strict_lower(Bp) < kTol * (1.0 + frobenius_norm(Bp));
    return finish(A, B, f, member, "nondiagonalizable");
}

}  // namespace

W2Verdict w2_membership(const QMatrixD& A, const QMatrixD& B) {
    if (A.rows != 2 || A.cols != 2 || B.rows != 2 || B.cols != 2)
        throw std::invalid_argument("w2_membership: need 2x2 matrices");

    QMatrixD An = normalized(A), Bn = normalized(B);
    auto eA = eigenvalues(An), eB = eigenvalues(Bn);
    double gapA = abs(eA[0] - eA[1]), gapB = abs(eB[0] - eB[1]);

    // Every positive verdict below carries a conjugation-validated witness, so
    // a failed structural analysis is allowed to fall through to the next one;
    // the first attempted case names the verdict when everything fails. This
    // keeps borderline inputs (closed-form eigenvalues of a repeated class can
    // split by ~1e-4) from being lost to one misjudged branch.
    W2Verdict first;
    bool have_first = false;
    auto keep = [&](W2Verdict v) {
        if (!have_first) {
            first = v;
            have_first = true;
        }
        return v;
    };

    if (gapA > kGapTol || gapB > kGapTol) {
        W2Verdict v = gapA >= gapB ? analyze_distinct(An, Bn, A, B)
                                   : analyze_distinct(Bn, An, A, B);
        if (v.member) return v;
        keep(v);
    }

    for (const auto* pr : {&An, &Bn}) {
        if (is_real_scalar_matrix(*pr, kTol)) {
            auto sr = schur(pr == &An ? Bn : An);
            Frame f;
            f.compose_unitary(sr.U);
            W2Verdict v = finish(A, B, f, true, "scalar");
            if (v.member) return v;
            keep(v);
        }
    }

    auto diagonalizable = [](const QMatrixD& M) {
        auto sr = schur(M);
        Quaternion<double> z = sr.T(0, 1);
        bool nonreal = std::fabs(sr.T(0, 0).b) > kGapTol;
        return nonreal && abs(z_complex(z)) < kTol * (1.0 + abs(z));
    };
    if (diagonalizable(An)) {
        W2Verdict v = analyze_repeated_diag(An, Bn, A, B);
        if (v.member) return v;
        keep(v);
    }
    if (diagonalizable(Bn)) {
        W2Verdict v = analyze_repeated_diag(Bn, An, A, B);
        if (v.member) return v;
        keep(v);
    }
    for (int orient = 0; orient < 2; ++orient) {
        W2Verdict v = orient == 0 ? analyze_nondiag(An, Bn, A, B)
                                  : analyze_nondiag(Bn, An, A, B);
        if (v.member) return v;
        keep(v);
    }
    return first;
}

bool fiber_check(const QMatrixQ& A, const QMatrixQ& B) {
    if (!A.is_square() || A.rows != B.rows || !B.is_square())
        throw std::invalid_argument("fiber_check: need square matrices of equal size");
    const std::size_t n = A.rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (i != j && !A(i, j).is_zero()) throw NotGeneric("A is not diagonal");
    // distinct eigenvalue classes: (real part, pure norm) pairwise different
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto &p = A(i, i), &q = A(j, j);
            if (p.a == q.a && p.pure_part().norm_sq() == q.pure_part().norm_sq())
                throw NotGeneric("repeated eigenvalue class on the diagonal");
        }

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (std::size_t i = 0; i < n && ok; ++i)
            for (std::size_t j = 0; j < i && ok; ++j)
                if (!B(perm[i], perm[j]).is_zero()) ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

SuiteReport wn_property_suite(const QMatrixQ& X, const QMatrixQ& Y, int k_max, int m_max) {
    SuiteReport rep;
    auto flag = [&](std::string name, int k, int m, Rat value) {
        rep.all_pass = false;
        rep.violations.push_back({std::move(name), k, m, std::move(value)});
    };
    QMatrixQ C = commutator(X, Y);
    for (int k = 1; k <= k_max; ++k) {
        Rat odd = qtrace(mat_pow(C, 2 * k - 1));
        if (odd != 0) flag("Tr([X,Y]^(2k-1))=0", k, 0, odd);
        Rat neg = qtrace(mat_pow(C, 4 * k - 2));
        if (neg > 0) flag("Tr([X,Y]^(4k-2))<=0", k, 0, neg);
        Rat pos = qtrace(mat_pow(C, 4 * k));
        if (pos < 0) flag("Tr([X,Y]^(4k))>=0", k, 0, pos);
    }
    for (int k = 1; k <= k_max; ++k)
        for (int m = 1; m <= m_max; ++m) {
            QMatrixQ xk = mat_pow(X, k), yk = mat_pow(Y, k);
            QMatrixQ xm = mat_pow(X, m), ym = mat_pow(Y, m);
            Rat diff = qtrace(xk * yk * xm * ym) - qtrace(yk * xk * ym * xm);
            if (diff != 0) flag("Tr(X^kY^kX^mY^m)=Tr(Y^kX^kY^mX^m)", k, m, diff);
        }
    return rep;
}

FriedlandReport friedland_check(const CMatrixQ& A, const CMatrixQ& B) {
    if (A.rows != 2 || A.cols != 2 || B.rows != 2 || B.cols != 2)
        throw std::invalid_argument("friedland_check: need 2x2 matrices");
    FriedlandReport r;
    CMatrixQ C = commutator(A, B);
    CMatrixQ C2 = C * C;
    r.b = C2.is_zero();
    r.c = ctrace(C2).is_zero();
    r.d = ctrace(A * A * B * B - A * B * A * B).is_zero();

    auto tr = [](const CMatrixQ& M) { return ctrace(M); };
    Cx<Rat> two(Rat(2));
    Cx<Rat> dA = two * tr(A * A) - tr(A) * tr(A);
    Cx<Rat> dB = two * tr(B * B) - tr(B) * tr(B);
    Cx<Rat> dAB = two * tr(A * B) - tr(A) * tr(B);
    r.e = (dA * dB == dAB * dAB);

    // (a): shared projective root of the two eigendirection quadratics.
    auto form = [](const CMatrixQ& M) {
        return std::array<Cx<Rat>, 3>{M(1, 0), M(1, 1) - M(0, 0), -M(0, 1)};
    };
    auto fa = form(A), fb = form(B);
    auto zero_form = [](const std::array<Cx<Rat>, 3>& f) {
        return f[0].is_zero() && f[1].is_zero() && f[2].is_zero();
    };
    if (zero_form(fa) || zero_form(fb)) {
        r.a = true;
    } else {
        Cx<Rat> res = (fa[0] * fb[2] - fb[0] * fa[2]) * (fa[0] * fb[2] - fb[0] * fa[2]) -
                      (fa[0] * fb[1] - fb[0] * fa[1]) * (fa[1] * fb[2] - fb[1] * fa[2]);
        r.a = res.is_zero();
    }
    return r;
}

PureImaginaryReport pure_imaginary_eig_check(const QMatrixQ& A) {
    if (A.rows != 2 || A.cols != 2)
        throw std::invalid_argument("pure_imaginary_eig_check: need a 2x2 matrix");
    QMatrixQ A2 = A * A;
    Rat t1 = qtrace(A), t2 = qtrace(A2), t3 = qtrace(A2 * A), t4 = qtrace(A2 * A2);
    PureImaginaryReport r;
    r.cond1 = (t1 == 0 && t3 == 0);
    r.cond2 = (t2 <= 0);
    r.cond3 = (2 * t4 <= t2 * t2 && t2 * t2 <= 4 * t4);
    return r;
}

PureImaginaryReport pure_imaginary_eig_check(const QMatrixD& A, double tol) {
    if (A.rows != 2 || A.cols != 2)
        throw std::invalid_argument("pure_imaginary_eig_check: need a 2x2 matrix");
    QMatrixD A2 = A * A;
    double t1 = qtrace(A), t2 = qtrace(A2), t3 = qtrace(A2 * A), t4 = qtrace(A2 * A2);
    double s = 1.0 + frobenius_norm(A);
    double eps = tol * s * s * s * s;
    PureImaginaryReport r;
    r.cond1 = (std::fabs(t1) < tol * s && std::fabs(t3) < eps);
    r.cond2 = (t2 <= eps);
    r.cond3 = (2 * t4 <= t2 * t2 + eps && t2 * t2 <= 4 * t4 + eps);
    return r;
}

bool spectrum_is_pure_imaginary(const QMatrixD& A, double tol) {
    for (const Cd& z : eigenvalues(A))
        if (std::fabs(z.re) > tol * (1.0 + frobenius_norm(A))) return false;
    return true;
}

}  // namespace quatlab

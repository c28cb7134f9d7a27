#pragma once

#include "quatlab/eig.hpp"
#include "quatlab/qmatrix.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace quatlab {

// The six separating invariants (Tr A, Tr A^2, Tr A^3, Tr A^4, Tr AA*, Tr A^2A*^2).
template <class R>
using InvariantSix = std::array<R, 6>;

template <class R>
InvariantSix<R> invariants(const QMatrix<R>& A) {
    if (A.rows != 2 || A.cols != 2) throw std::invalid_argument("invariants: need a 2x2 matrix");
    QMatrix<R> A2 = A * A;
    QMatrix<R> As = adjoint(A);
    return {qtrace(A), qtrace(A2), qtrace(A2 * A), qtrace(A2 * A2), qtrace(A * As),
            qtrace(A2 * As * As)};
}

// Upper-triangular canonical representative: [[alpha, z1 + j z3], [0, beta]]
// with alpha, beta complex (Im >= 0), z1, z3 >= 0, and z3 = 0 whenever alpha
// or beta is real.
struct CanonicalUpper2 {
    Cd alpha, beta;
    double z1 = 0, z3 = 0;

    QMatrixD matrix() const {
        QMatrixD A(2, 2);
        A(0, 0) = {alpha.re, alpha.im, 0, 0};
        A(1, 1) = {beta.re, beta.im, 0, 0};
        A(0, 1) = {z1, 0, z3, 0};
        return A;
    }
};

// Restriction of p6 to the canonical set:
// p6/2 = |alpha|^4 + |beta|^4 + |alpha + conj(beta)|^2 |z|^2
//        + z1^2 (alpha - conj(alpha))(conj(beta) - beta).
inline double p6_on_K(const CanonicalUpper2& c) {
    double na = c.alpha.norm_sq(), nb = c.beta.norm_sq();
    double zsq = c.z1 * c.z1 + c.z3 * c.z3;
    Cd mix = c.alpha + c.beta.conj();
    // (alpha - conj alpha)(conj beta - beta) = 4 Im(alpha) Im(beta)
    double half = na * na + nb * nb + mix.norm_sq() * zsq +
                  c.z1 * c.z1 * 4.0 * c.alpha.im * c.beta.im;
    return 2.0 * half;
}

struct CanonicalResult {
    CanonicalUpper2 form;
    QMatrixD unitary;  // U with U A U* = form.matrix()
    InvariantSix<double> p;
    double residual;
};

// Canonical form via Schur plus diagonal unit-quaternion phase fixing.
// Diagonal order convention: lexicographically smaller (Re, Im) first.
CanonicalResult canonical_form(const QMatrixD& A);

inline bool invariants_equal(const InvariantSix<double>& p, const InvariantSix<double>& q,
                             double rel = 1e-7, double abs_floor = 1e-9) {
    for (int k = 0; k < 6; ++k) {
        double tol = std::max(abs_floor, rel * std::max(std::fabs(p[k]), std::fabs(q[k])));
        if (std::fabs(p[k] - q[k]) > tol) return false;
    }
    return true;
}

inline std::vector<int> differing_invariants(const InvariantSix<double>& p,
                                             const InvariantSix<double>& q, double rel = 1e-7,
                                             double abs_floor = 1e-9) {
    std::vector<int> out;
    for (int k = 0; k < 6; ++k) {
        double tol = std::max(abs_floor, rel * std::max(std::fabs(p[k]), std::fabs(q[k])));
        if (std::fabs(p[k] - q[k]) > tol) out.push_back(k + 1);
    }
    return out;
}

inline bool sp2_equivalent(const QMatrixD& A, const QMatrixD& B) {
    return invariants_equal(invariants(A), invariants(B));
}

inline bool sp2_equivalent(const QMatrixQ& A, const QMatrixQ& B) {
    return invariants(A) == invariants(B);
}

// The six minimality witness pairs; the k-th pair differs exactly in p_k.
std::vector<std::pair<QMatrixD, QMatrixD>> table1_witnesses();

// Rows whose entries are rational (2, 3, 5, 6), exact; .first is the row number.
std::vector<std::pair<int, std::pair<QMatrixQ, QMatrixQ>>> table1_witnesses_exact();

}  // namespace quatlab

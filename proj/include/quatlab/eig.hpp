#pragma once

#include "quatlab/qmatrix.hpp"

#include <vector>

namespace quatlab {

struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default size bound for eigenvalue / Schur work.
inline constexpr std::size_t kEigSizeBound = 6;

// Roots of a monic complex polynomial c[0] + c[1] z + ... + c[n-1] z^{n-1} + z^n.
// Closed form for degree <= 4 (with Newton polishing), companion QR otherwise.
std::vector<Cd> poly_roots(const std::vector<Cd>& coeffs_low_to_high_monic);

// All eigenvalues of a complex matrix, unordered.
std::vector<Cd> eig_complex(const CMatrixD& M);

// Characteristic polynomial coefficients of M (monic, low-to-high, the
// leading 1 omitted), by Faddeev-LeVerrier.
std::vector<Cd> char_poly(const CMatrixD& M);

// The n upper-half-plane eigenvalue representatives of a quaternionic matrix,
// sorted lexicographically by (Re, Im). chi(A) has eigenvalues {lambda_i,
// conj(lambda_i)}; for 2n <= 4 the quartic/quadratic closed form is used.
std::vector<Cd> eigenvalues(const QMatrixD& A, std::size_t size_bound = kEigSizeBound);

// Quaternionic right eigenvector: A v = v lambda, validated, unit norm.
// From a complex eigenvector (u;w) of chi(A), v = u + j w.
std::vector<Quaternion<double>> eigenvector(const QMatrixD& A, const Cd& lambda);

struct SchurResult {
    QMatrixD U;  // unitary
    QMatrixD T;  // upper triangular, complex diagonal with Im >= 0; T = U A U*
};

// Quaternionic Schur triangularization with the diagonal in the requested
// eigenvalue order (indices into eigenvalues(A)). Empty order = (0,1,...,n-1).
SchurResult schur(const QMatrixD& A, std::vector<std::size_t> order = {},
                  std::size_t size_bound = kEigSizeBound);

// Unit quaternion u with u q u^{-1} = Re(q) + i |pure(q)| (upper half-plane).
Quaternion<double> complexifying_unit(const Quaternion<double>& q);

// Solves M x = b by partial-pivot LU. Throws on (numerically) singular M.
std::vector<Cd> solve_complex(CMatrixD M, std::vector<Cd> b);

double vec_norm(const std::vector<Cd>& v);
double vec_norm(const std::vector<Quaternion<double>>& v);

}  // namespace quatlab

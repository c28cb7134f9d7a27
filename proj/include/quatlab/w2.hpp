#pragma once

#include "quatlab/eig.hpp"
#include "quatlab/qmatrix.hpp"

#include <string>
#include <vector>

namespace quatlab {

struct NotGeneric : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct W2Verdict {
    bool member = false;
    std::string case_tag;  // which structural case decided it
    bool has_witness = false;
    QMatrixD P, Pinv;      // P A Pinv and P B Pinv upper triangular
    double residual = 0;   // strict-lower mass of both conjugated images
};

// Simultaneous triangularizability of a 2x2 pair, by case analysis on the
// eigenstructure. Witnesses are re-validated by explicit conjugation.
W2Verdict w2_membership(const QMatrixD& A, const QMatrixD& B);

// For A diagonal with distinct eigenvalue classes: B lies in some P U_n P^{-1}
// (permutation P), decided by exact zero patterns. Throws NotGeneric.
bool fiber_check(const QMatrixQ& A, const QMatrixQ& B);

struct SuiteViolation {
    std::string name;
    int k = 0, m = 0;
    Rat value;
};

struct SuiteReport {
    bool all_pass = true;
    std::vector<SuiteViolation> violations;
};

// Exact sign/zero checks on commutator-power traces and the power-word
// equalities, for 1 <= k <= k_max, 1 <= m <= m_max.
SuiteReport wn_property_suite(const QMatrixQ& X, const QMatrixQ& Y, int k_max, int m_max);

struct FriedlandReport {
    bool a = false;  // common eigenvector (constructive, exact)
    bool b = false;  // [A,B]^2 = 0
    bool c = false;  // tr([A,B]^2) = 0
    bool d = false;  // tr(A^2B^2 - (AB)^2) = 0
    bool e = false;  // discriminant identity
    bool consistent() const { return a == b && b == c && c == d && d == e; }
};

// The five equivalent conditions for a 2x2 complex pair, evaluated exactly.
FriedlandReport friedland_check(const CMatrixQ& A, const CMatrixQ& B);

struct PureImaginaryReport {
    bool cond1 = false;  // Tr A = Tr A^3 = 0
    bool cond2 = false;  // Tr A^2 <= 0
    bool cond3 = false;  // 2 Tr A^4 <= (Tr A^2)^2 <= 4 Tr A^4
    bool all() const { return cond1 && cond2 && cond3; }
};

// Conditions characterizing a purely imaginary spectrum for 2x2 quaternionic
// matrices; exact in rational mode.
PureImaginaryReport pure_imaginary_eig_check(const QMatrixQ& A);
PureImaginaryReport pure_imaginary_eig_check(const QMatrixD& A, double tol = 1e-7);

// Float-mode spectrum side of the iff: every eigenvalue has |Re| < tol.
bool spectrum_is_pure_imaginary(const QMatrixD& A, double tol = 1e-7);

}  // namespace quatlab

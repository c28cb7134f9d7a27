#pragma once

#include "quatlab/eig.hpp"
#include "quatlab/qmatrix.hpp"

#include <algorithm>
#include <random>

namespace quatlab {

// Seeded generator handle; every randomized operation threads one of these
// so CLI runs are reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::mt19937_64& engine() { return eng_; }

    double uniform(double lo = -1.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double gauss() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
    long uniform_int(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(eng_);
    }

    // Rational with numerator and denominator bounded by `bound`.
    Rat rational(long bound = 10) {
        return Rat(uniform_int(-bound, bound), uniform_int(1, bound));
    }
    Int integer(long bound = 10) { return Int(uniform_int(-bound, bound)); }

    Quaternion<double> quaternion() { return {gauss(), gauss(), gauss(), gauss()}; }

    Quaternion<double> unit_quaternion() {
        Quaternion<double> q = quaternion();
        double n = abs(q);
        while (n < 1e-6) {
            q = quaternion();
            n = abs(q);
        }
        return q * (1.0 / n);
    }

    Quaternion<double> pure_quaternion() { return {0.0, gauss(), gauss(), gauss()}; }

    Quaternion<double> pure_unit_quaternion() {
        Quaternion<double> p = pure_quaternion();
        double n = abs(p);
        while (n < 1e-6) {
            p = pure_quaternion();
            n = abs(p);
        }
        return p * (1.0 / n);
    }

    Quaternion<Rat> rational_quaternion(long bound = 10) {
        return {rational(bound), rational(bound), rational(bound), rational(bound)};
    }
    Quaternion<Rat> integer_quaternion(long bound = 10) {
        return {Rat(integer(bound)), Rat(integer(bound)), Rat(integer(bound)),
                Rat(integer(bound))};
    }
    Cx<Rat> gaussian_rational(long bound = 10) { return {rational(bound), rational(bound)}; }

    // Unit rational quaternion via the Cayley map of a random pure rational.
    Quaternion<Rat> unit_rational_quaternion(long bound = 4) {
        return cayley_unit({Rat(0), rational(bound), rational(bound), rational(bound)});
    }

private:
    std::mt19937_64 eng_;
};

inline QMatrixD random_qmatrix(Rng& rng, std::size_t n) {
    QMatrixD A(n, n);
    for (auto& q : A.entries) q = rng.quaternion();
    return A;
}

// Modified Gram-Schmidt on a random quaternion matrix.
inline QMatrixD random_unitary(Rng& rng, std::size_t n) {
    for (;;) {
        QMatrixD A = random_qmatrix(rng, n);
        QMatrixD U(n, n);
        bool ok = true;
        for (std::size_t j = 0; j < n && ok; ++j) {
            std::vector<Quaternion<double>> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = A(i, j);
            for (std::size_t c = 0; c < j; ++c) {
                Quaternion<double> ip{};
                for (std::size_t i = 0; i < n; ++i) ip += U(i, c).conj() * v[i];
                for (std::size_t i = 0; i < n; ++i) v[i] -= U(i, c) * ip;
            }
            double nv = vec_norm(v);
            if (nv < 1e-6) {
                ok = false;
                break;
            }
            for (std::size_t i = 0; i < n; ++i) U(i, j) = v[i] * (1.0 / nv);
        }
        if (ok) return U;
    }
}

inline QMatrixD random_upper(Rng& rng, std::size_t n) {
    QMatrixD A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) A(i, j) = rng.quaternion();
    return A;
}

// Rejects until the eigenvalues are pairwise distinct (min gap 1e-6).
inline QMatrixD random_generic(Rng& rng, std::size_t n) {
    for (;;) {
        QMatrixD A = random_qmatrix(rng, n);
        auto eigs = eigenvalues(A);
        double gap = 1e300;
        for (std::size_t i = 0; i < eigs.size(); ++i)
            for (std::size_t j = i + 1; j < eigs.size(); ++j)
                gap = std::min(gap, abs(eigs[i] - eigs[j]));
        if (n < 2 || gap > 1e-6) return A;
    }
}

inline QMatrixD random_invertible(Rng& rng, std::size_t n) {
    for (;;) {
        QMatrixD A = random_qmatrix(rng, n);
        auto eigs = eigenvalues(A);
        bool ok = true;
        for (const auto& z : eigs)
            if (abs(z) < 1e-3) ok = false;
        if (ok) return A;
    }
}

// Exact-mode unitary: signed permutation times unit rational quaternions.
inline QMatrixQ random_unitary_exact(Rng& rng, std::size_t n) {
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    QMatrixQ U(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        Quaternion<Rat> u = rng.unit_rational_quaternion();
        if (rng.uniform_int(0, 1)) u = -u;
        U(perm[j], j) = u;
    }
    return U;
}

inline QMatrixQ random_integer_qmatrix(Rng& rng, std::size_t n, long bound = 4) {
    QMatrixQ A(n, n);
    for (auto& q : A.entries) q = rng.integer_quaternion(bound);
    return A;
}

inline QMatrixQ random_rational_qmatrix(Rng& rng, std::size_t n, long bound = 10) {
    QMatrixQ A(n, n);
    for (auto& q : A.entries) q = rng.rational_quaternion(bound);
    return A;
}

inline QMatrixQ random_integer_upper(Rng& rng, std::size_t n, long bound = 4) {
    QMatrixQ A(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) A(i, j) = rng.integer_quaternion(bound);
    return A;
}

// Unipotent lower-triangular with integer quaternion entries; its inverse is
// integral as well, so conjugated samples stay integral.
inline std::pair<QMatrixQ, QMatrixQ> random_unipotent_lower(Rng& rng, std::size_t n,
                                                            long bound = 3) {
    QMatrixQ L = QMatrixQ::identity(n);
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) L(i, j) = rng.integer_quaternion(bound);
    // inverse by forward substitution on unipotent structure
    QMatrixQ Inv = QMatrixQ::identity(n);
    // For n <= 3 closed-form: I - N + N^2 where N is the strict lower part.
    QMatrixQ N = L - QMatrixQ::identity(n);
    QMatrixQ Nk = N;
    Rat sign(-1);
    for (std::size_t k = 1; k < n; ++k) {
        Inv = Inv + Nk.scaled(Quaternion<Rat>(sign));
        Nk = Nk * N;
        sign = -sign;
    }
    return {L, Inv};
}

}  // namespace quatlab

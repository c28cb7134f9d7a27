#pragma once

#include "quatlab/complex_scalar.hpp"
#include "quatlab/quaternion.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace quatlab {

// Dense row-major matrix over any ring element type (quaternions, complex
// scalars, plain reals).
template <class T>
struct Mat {
    std::size_t rows = 0, cols = 0;
    std::vector<T> entries;

    Mat() = default;
    Mat(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}

    static Mat identity(std::size_t n) {
        Mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = one_element();
        return m;
    }

    static T one_element() {
        if constexpr (requires { T::one(); }) return T::one();
        else return T(1);
    }

    T& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }

    bool operator==(const Mat&) const = default;

    Mat operator+(const Mat& o) const {
        check_same_shape(o);
        Mat m(rows, cols);
        for (std::size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i] + o.entries[i];
        return m;
    }
    Mat operator-(const Mat& o) const {
        check_same_shape(o);
        Mat m(rows, cols);
        for (std::size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i] - o.entries[i];
        return m;
    }
    Mat operator-() const {
        Mat m(rows, cols);
        for (std::size_t i = 0; i < entries.size(); ++i) m.entries[i] = -entries[i];
        return m;
    }
    Mat operator*(const Mat& o) const {
        if (cols != o.rows) throw std::invalid_argument("matrix shape mismatch in product");
        Mat m(rows, o.cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t k = 0; k < cols; ++k) {
                const T& aik = (*this)(i, k);
                if constexpr (requires(const T& t) { t.is_zero(); }) {
                    if (aik.is_zero()) continue;
                }
                for (std::size_t j = 0; j < o.cols; ++j) m(i, j) += aik * o(k, j);
            }
        return m;
    }
    template <class S>
    Mat scaled(const S& s) const {
        Mat m(rows, cols);
        for (std::size_t i = 0; i < entries.size(); ++i) m.entries[i] = entries[i] * s;
        return m;
    }

    bool is_square() const { return rows == cols; }

    void check_same_shape(const Mat& o) const {
        if (rows != o.rows || cols != o.cols)
            throw std::invalid_argument("matrix shape mismatch");
    }

    bool is_zero() const {
        for (const auto& e : entries)
            if (!element_is_zero(e)) return false;
        return true;
    }

    static bool element_is_zero(const T& e) {
        if constexpr (requires { e.is_zero(); }) return e.is_zero();
        else return e == T{};
    }
};

template <class R>
using QMatrix = Mat<Quaternion<R>>;
template <class R>
using CMatrix = Mat<Cx<R>>;

using QMatrixQ = QMatrix<Rat>;
using QMatrixD = QMatrix<double>;
using CMatrixQ = CMatrix<Rat>;
using CMatrixD = CMatrix<double>;

// Quaternionic trace: Tr(A) = 2 Re(sum of diagonal).
template <class R>
R qtrace(const QMatrix<R>& A) {
    if (!A.is_square()) throw std::invalid_argument("qtrace: matrix not square");
    R s{};
    for (std::size_t i = 0; i < A.rows; ++i) s += A(i, i).a;
    return static_cast<R>(s + s);
}

// Standard (non-doubled) complex trace.
template <class R>
Cx<R> ctrace(const CMatrix<R>& A) {
    if (!A.is_square()) throw std::invalid_argument("ctrace: matrix not square");
    Cx<R> s{};
    for (std::size_t i = 0; i < A.rows; ++i) s += A(i, i);
    return s;
}

template <class R>
QMatrix<R> adjoint(const QMatrix<R>& A) {
    QMatrix<R> m(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) m(j, i) = A(i, j).conj();
    return m;
}

template <class R>
CMatrix<R> adjoint(const CMatrix<R>& A) {
    CMatrix<R> m(A.cols, A.rows);
    for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < A.cols; ++j) m(j, i) = A(i, j).conj();
    return m;
}

template <class T>
Mat<T> commutator(const Mat<T>& A, const Mat<T>& B) {
    return A * B - B * A;
}

template <class T>
Mat<T> mat_pow(const Mat<T>& A, unsigned k) {
    if (!A.is_square()) throw std::invalid_argument("mat_pow: matrix not square");
    Mat<T> acc = Mat<T>::identity(A.rows);
    for (unsigned i = 0; i < k; ++i) acc = acc * A;
    return acc;
}

// chi_n: M_n(H) -> M_2n(C), A = A1 + jA2 |-> [[A1, -conj(A2)], [A2, conj(A1)]].
template <class R>
CMatrix<R> chi(const QMatrix<R>& A) {
    const std::size_t n = A.rows, m = A.cols;
    CMatrix<R> M(2 * n, 2 * m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            const auto& q = A(i, j);
            Cx<R> a1(q.a, q.b);
            // q = z1 + j z2 with z2 = c - id, since j(c - id) = jc + kd.
            Cx<R> a2(q.c, static_cast<R>(-q.d));
            M(i, j) = a1;
            M(i, j + m) = -a2.conj();
            M(i + n, j) = a2;
            M(i + n, j + m) = a1.conj();
        }
    return M;
}

// Inverse of chi on its image: reads A1, A2 from the top blocks.
template <class R>
QMatrix<R> chi_inverse_blocks(const CMatrix<R>& M) {
    if (M.rows % 2 || M.cols % 2) throw std::invalid_argument("chi_inverse: odd shape");
    const std::size_t n = M.rows / 2, m = M.cols / 2;
    QMatrix<R> A(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Cx<R> a1 = M(i, j), a2 = M(i + n, j);
            A(i, j) = Quaternion<R>(a1.re, a1.im, a2.re, static_cast<R>(-a2.im));
        }
    return A;
}

template <class R>
QMatrix<double> to_float(const QMatrix<R>& A) {
    QMatrix<double> m(A.rows, A.cols);
    for (std::size_t i = 0; i < A.entries.size(); ++i) m.entries[i] = to_float(A.entries[i]);
    return m;
}

template <class R>
CMatrix<double> to_float(const CMatrix<R>& A) {
    CMatrix<double> m(A.rows, A.cols);
    for (std::size_t i = 0; i < A.entries.size(); ++i) m.entries[i] = to_float(A.entries[i]);
    return m;
}

inline double frobenius_norm(const QMatrixD& A) {
    double s = 0;
    for (const auto& q : A.entries) s += q.norm_sq();
    return std::sqrt(s);
}

inline double frobenius_norm(const CMatrixD& A) {
    double s = 0;
    for (const auto& z : A.entries) s += z.norm_sq();
    return std::sqrt(s);
}

inline bool is_unitary(const QMatrixD& U, double tol = 1e-9) {
    if (!U.is_square()) return false;
    return frobenius_norm(adjoint(U) * U - QMatrixD::identity(U.rows)) < tol;
}

inline bool is_unitary(const QMatrixQ& U) {
    if (!U.is_square()) return false;
    return (adjoint(U) * U) == QMatrixQ::identity(U.rows);
}

// A is nilpotent iff chi(A)^{2n} = 0; decided exactly in rational mode.
inline bool is_nilpotent(const QMatrixQ& A) {
    if (!A.is_square()) throw std::invalid_argument("is_nilpotent: matrix not square");
    return mat_pow(chi(A), static_cast<unsigned>(2 * A.rows)).is_zero();
}

}  // namespace quatlab

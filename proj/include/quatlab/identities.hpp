#pragma once

#include "quatlab/complex_scalar.hpp"
#include "quatlab/quaternion.hpp"
#include "quatlab/qmatrix.hpp"

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace quatlab {

struct NotPure : std::domain_error {
    using std::domain_error::domain_error;
};
struct NotUnit : std::domain_error {
    using std::domain_error::domain_error;
};
struct GuardViolated : std::domain_error {
    using std::domain_error::domain_error;
};

inline void require_pure(const Quaternion<double>& p) {
    if (std::fabs(p.a) > kEpsPure) throw NotPure("quaternion has nonzero real part");
}

inline void require_unit(const Quaternion<double>& p) {
    if (std::fabs(p.norm_sq() - 1.0) > 1e-9) throw NotUnit("quaternion is not unit");
}

// Signed difference without the unit guard (used to witness non-validity for
// non-unit pure quaternions).
inline double one_param_residual_unchecked(const Quaternion<double>& p,
                                           const Quaternion<double>& q,
                                           std::span<const double> s,
                                           std::span<const double> t) {
    auto prod = [&](const Quaternion<double>& a, const Quaternion<double>& b) {
        Quaternion<double> m = Quaternion<double>::one();
        for (std::size_t i = 0; i < s.size(); ++i)
            m = m * exp_pure(a, s[i]) * exp_pure(b, t[i]);
        return 2.0 * m.a;
    };
    return prod(p, q) - prod(q, p);
}

// | Tr prod phi_p(s_i) phi_q(t_i) - Tr prod phi_q(s_i) phi_p(t_i) |,
// zero for pure unit p, q.
inline double check_one_param_identity(const Quaternion<double>& p, const Quaternion<double>& q,
                                       std::span<const double> s, std::span<const double> t) {
    require_pure(p);
    require_pure(q);
    require_unit(p);
    require_unit(q);
    if (s.size() != t.size()) throw std::invalid_argument("parameter lists differ in length");
    return std::fabs(one_param_residual_unchecked(p, q, s, t));
}

// Four-factor case: Tr(phi_p(s)phi_q(s)phi_p(t)phi_q(t)) is symmetric in
// p <-> q for arbitrary pure p, q.
inline double check_prop42a(const Quaternion<double>& p, const Quaternion<double>& q, double s,
                            double t) {
    require_pure(p);
    require_pure(q);
    const double args[2] = {s, t};
    return std::fabs(one_param_residual_unchecked(p, q, args, args));
}

// Six-factor case: valid when at least two of r, s, t agree.
inline double check_prop42b(const Quaternion<double>& p, const Quaternion<double>& q, double r,
                            double s, double t) {
    require_pure(p);
    require_pure(q);
    if (r != s && s != t && r != t)
        throw GuardViolated("check_prop42b needs two equal parameters");
    const double args[3] = {r, s, t};
    return std::fabs(one_param_residual_unchecked(p, q, args, args));
}

template <class T>
T value_pow(const T& v, unsigned k) {
    T acc = T::one();
    for (unsigned i = 0; i < k; ++i) acc = acc * v;
    return acc;
}

template <class R>
Cx<R> cx_pow(const Cx<R>& v, unsigned k) {
    Cx<R> acc(scalar_traits<R>::from_int(1));
    for (unsigned i = 0; i < k; ++i) acc = acc * v;
    return acc;
}

// Cor 4.3: Tr(x^m y^m x^n y^n) - Tr(y^m x^m y^n x^n), identically zero on H.
// Convention: v^0 = 1 for every v including 0.
template <class R>
R check_qident(unsigned m, unsigned n, const Quaternion<R>& x, const Quaternion<R>& y) {
    auto xm = value_pow(x, m), ym = value_pow(y, m);
    auto xn = value_pow(x, n), yn = value_pow(y, n);
    Quaternion<R> lhs = xm * ym * xn * yn;
    Quaternion<R> rhs = ym * xm * yn * xn;
    return static_cast<R>((lhs.a - rhs.a) + (lhs.a - rhs.a));
}

// Triple version, valid when m, n, r are not pairwise distinct.
template <class R>
R check_qident3(unsigned m, unsigned n, unsigned r, const Quaternion<R>& x,
                const Quaternion<R>& y) {
    if (m != n && n != r && m != r)
        throw GuardViolated("triple identity needs non-distinct exponents");
    auto xm = value_pow(x, m), ym = value_pow(y, m);
    auto xn = value_pow(x, n), yn = value_pow(y, n);
    auto xr = value_pow(x, r), yr = value_pow(y, r);
    Quaternion<R> lhs = xm * ym * xn * yn * xr * yr;
    Quaternion<R> rhs = ym * xm * yn * xn * yr * xr;
    return static_cast<R>((lhs.a - rhs.a) + (lhs.a - rhs.a));
}

// Cor 4.4: the same identities for 2x2 complex matrices under the ordinary
// trace, exact for Gaussian-rational entries.
template <class R>
Cx<R> check_cident(unsigned m, unsigned n, const CMatrix<R>& x, const CMatrix<R>& y) {
    if (x.rows != 2 || x.cols != 2 || y.rows != 2 || y.cols != 2)
        throw std::invalid_argument("check_cident: need 2x2 matrices");
    auto xm = mat_pow(x, m), ym = mat_pow(y, m);
    auto xn = mat_pow(x, n), yn = mat_pow(y, n);
    return ctrace(xm * ym * xn * yn) - ctrace(ym * xm * yn * xn);
}

template <class R>
Cx<R> check_cident3(unsigned m, unsigned n, unsigned r, const CMatrix<R>& x,
                    const CMatrix<R>& y) {
    if (m != n && n != r && m != r)
        throw GuardViolated("triple identity needs non-distinct exponents");
    auto xm = mat_pow(x, m), ym = mat_pow(y, m);
    auto xn = mat_pow(x, n), yn = mat_pow(y, n);
    auto xr = mat_pow(x, r), yr = mat_pow(y, r);
    return ctrace(xm * ym * xn * yn * xr * yr) - ctrace(ym * xm * yn * xn * yr * xr);
}

// Tr([A,B]^3), with the two product expansions of the commutator-cube
// identity cross-checked in exact mode by callers/tests:
// Tr([A,B]^3) = 3 Tr(A^2B^2AB - B^2A^2BA) = -3 Tr(AB^2A[A,B]).
template <class R>
R tr_comm_cube(const QMatrix<R>& A, const QMatrix<R>& B) {
    return qtrace(mat_pow(commutator(A, B), 3));
}

}  // namespace quatlab

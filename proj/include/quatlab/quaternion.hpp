#pragma once

#include "quatlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace quatlab {

// Quaternion a + ib + jc + kd over an exact-rational or float64 real backend.
template <class R>
struct Quaternion {
    R a{}, b{}, c{}, d{};

    Quaternion() = default;
    Quaternion(R a_, R b_ = R{}, R c_ = R{}, R d_ = R{}) : a(a_), b(b_), c(c_), d(d_) {}

    static Quaternion one() { return Quaternion(scalar_traits<R>::from_int(1)); }
    static Quaternion i() { return Quaternion(R{}, scalar_traits<R>::from_int(1)); }
    static Quaternion j() { return Quaternion(R{}, R{}, scalar_traits<R>::from_int(1)); }
    static Quaternion k() { return Quaternion(R{}, R{}, R{}, scalar_traits<R>::from_int(1)); }

    bool operator==(const Quaternion&) const = default;

    Quaternion operator+(const Quaternion& o) const {
        return {static_cast<R>(a + o.a), static_cast<R>(b + o.b),
                static_cast<R>(c + o.c), static_cast<R>(d + o.d)};
    }
    Quaternion operator-(const Quaternion& o) const {
        return {static_cast<R>(a - o.a), static_cast<R>(b - o.b),
                static_cast<R>(c - o.c), static_cast<R>(d - o.d)};
    }
    Quaternion operator-() const {
        return {static_cast<R>(-a), static_cast<R>(-b), static_cast<R>(-c), static_cast<R>(-d)};
    }

    // Hamilton product.
    Quaternion operator*(const Quaternion& o) const {
        return {static_cast<R>(a * o.a - b * o.b - c * o.c - d * o.d),
                static_cast<R>(a * o.b + b * o.a + c * o.d - d * o.c),
                static_cast<R>(a * o.c - b * o.d + c * o.a + d * o.b),
                static_cast<R>(a * o.d + b * o.c - c * o.b + d * o.a)};
    }

    Quaternion operator*(const R& s) const {
        return {static_cast<R>(a * s), static_cast<R>(b * s),
                static_cast<R>(c * s), static_cast<R>(d * s)};
    }

    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }
    Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }

    R real_part() const { return a; }
    Quaternion pure_part() const { return {R{}, b, c, d}; }
    Quaternion conj() const {
        return {a, static_cast<R>(-b), static_cast<R>(-c), static_cast<R>(-d)};
    }
    R norm_sq() const { return static_cast<R>(a * a + b * b + c * c + d * d); }

    bool is_zero() const { return a == R{} && b == R{} && c == R{} && d == R{}; }

    Quaternion inverse() const {
        R n = norm_sq();
        if (n == R{}) throw std::domain_error("inverse of zero quaternion");
        Quaternion q = conj();
        return {static_cast<R>(q.a / n), static_cast<R>(q.b / n),
                static_cast<R>(q.c / n), static_cast<R>(q.d / n)};
    }
};

template <class R>
Quaternion<R> operator*(const R& s, const Quaternion<R>& q) { return q * s; }

// u q u^{-1}; preserves the real part and the norm.
template <class R>
Quaternion<R> conjugate_by(const Quaternion<R>& u, const Quaternion<R>& q) {
    if (u.is_zero()) throw std::domain_error("conjugation by zero quaternion");
    return u * q * u.inverse();
}

inline double abs(const Quaternion<double>& q) { return std::sqrt(q.norm_sq()); }

// Pure-part tolerance for float-mode exponential and identity checks.
inline constexpr double kEpsPure = 1e-9;

// phi_p(s) = e^{sp} for pure p: cos(|p|s) + (p/|p|) sin(|p|s).
inline Quaternion<double> exp_pure(const Quaternion<double>& p, double s) {
    if (std::fabs(p.a) > kEpsPure)
        throw std::domain_error("exp_pure: quaternion is not pure");
    double n = abs(p);
    if (n == 0.0) return Quaternion<double>::one();
    double scale = std::sin(n * s) / n;
    return {std::cos(n * s), p.b * scale, p.c * scale, p.d * scale};
}

// Unit rational quaternion from a pure rational p via (1+p)^2 / (1+|p|^2).
// |1+p| = |1-p| for pure p, so the quotient has norm exactly 1.
inline Quaternion<Rat> cayley_unit(const Quaternion<Rat>& p) {
    if (!(p.a == Rat{})) throw std::domain_error("cayley_unit: p must be pure");
    Quaternion<Rat> w = Quaternion<Rat>::one() + p;
    Rat n = Rat(1) + p.norm_sq();
    Quaternion<Rat> sq = w * w;
    return {sq.a / n, sq.b / n, sq.c / n, sq.d / n};
}

template <class R>
Quaternion<double> to_float(const Quaternion<R>& q) {
    return {to_double(q.a), to_double(q.b), to_double(q.c), to_double(q.d)};
}

}  // namespace quatlab

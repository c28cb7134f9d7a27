#pragma once

#include "quatlab/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace quatlab {

// Complex scalar over either backend; std::complex is unusable with
// multiprecision types, hence this small stand-in.
template <class R>
struct Cx {
    R re{}, im{};

    Cx() = default;
    Cx(R re_, R im_ = R{}) : re(re_), im(im_) {}

    bool operator==(const Cx&) const = default;

    Cx operator+(const Cx& o) const { return {static_cast<R>(re + o.re), static_cast<R>(im + o.im)}; }
    Cx operator-(const Cx& o) const { return {static_cast<R>(re - o.re), static_cast<R>(im - o.im)}; }
    Cx operator-() const { return {static_cast<R>(-re), static_cast<R>(-im)}; }
    Cx operator*(const Cx& o) const {
        return {static_cast<R>(re * o.re - im * o.im), static_cast<R>(re * o.im + im * o.re)};
    }
    Cx operator*(const R& s) const { return {static_cast<R>(re * s), static_cast<R>(im * s)}; }
    Cx conj() const { return {re, static_cast<R>(-im)}; }
    R norm_sq() const { return static_cast<R>(re * re + im * im); }
    bool is_zero() const { return re == R{} && im == R{}; }

    Cx inverse() const {
        R n = norm_sq();
        if (n == R{}) throw std::domain_error("inverse of zero complex scalar");
        return {static_cast<R>(re / n), static_cast<R>(-im / n)};
    }
    Cx operator/(const Cx& o) const { return *this * o.inverse(); }

    Cx& operator+=(const Cx& o) { return *this = *this + o; }
    Cx& operator-=(const Cx& o) { return *this = *this - o; }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }
};

using Cd = Cx<double>;

inline double abs(const Cd& z) { return std::hypot(z.re, z.im); }

inline Cd sqrt(const Cd& z) {
    double r = abs(z);
    if (r == 0.0) return {0.0, 0.0};
    double u = std::sqrt((r + z.re) / 2.0);
    double v = std::sqrt((r - z.re) / 2.0);
    if (z.im < 0) v = -v;
    if (u == 0.0 && z.im == 0.0 && z.re < 0) return {0.0, std::sqrt(-z.re)};
    return {u, v};
}

template <class R>
Cd to_float(const Cx<R>& z) {
    return {to_double(z.re), to_double(z.im)};
}

}  // namespace quatlab

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace quatlab {

using Int = boost::multiprecision::cpp_int;

// Exact scalar backend. cpp_rational keeps values normalized (reduced,
// positive denominator), so operator== is structural equality.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(double r) { return r; }

inline std::string rat_to_string(const Rat& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Parses "p", "-p/q" etc. Throws std::invalid_argument on junk.
inline Rat rat_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::runtime_error& e) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

// Residue of an exact rational modulo a prime (denominator inverted mod p).
// Throws if the denominator vanishes mod p; callers pick a different prime.
inline std::uint64_t mod_p(const Rat& r, std::uint64_t p) {
    Int num = numerator(r) % Int(p);
    if (num < 0) num += p;
    Int den = denominator(r) % Int(p);
    std::uint64_t n = num.convert_to<std::uint64_t>();
    std::uint64_t d = den.convert_to<std::uint64_t>();
    if (d == 0) throw std::domain_error("denominator divisible by prime");
    // d^(p-2) mod p
    auto mulmod = [p](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
    };
    std::uint64_t inv = 1, base = d, e = p - 2;
    while (e) {
        if (e & 1) inv = mulmod(inv, base);
        base = mulmod(base, base);
        e >>= 1;
    }
    return mulmod(n, inv);
}

template <class R>
struct scalar_traits;

template <>
struct scalar_traits<Rat> {
    static constexpr bool exact = true;
    static Rat from_int(long v) { return Rat(v); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double from_int(long v) { return static_cast<double>(v); }
};

}  // namespace quatlab

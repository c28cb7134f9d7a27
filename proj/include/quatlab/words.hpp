#pragma once

#include "quatlab/qmatrix.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace quatlab {

// Words in the two-letter alphabet {x, y} are plain strings; the empty word
// evaluates to the identity matrix.

inline std::pair<int, int> bidegree(const std::string& w) {
    int k = 0, l = 0;
    for (char c : w) (c == 'x' ? k : l)++;
    return {k, l};
}

// Lexicographically minimal cyclic rotation; trace of a word depends only on
// this necklace representative.
inline std::string canonical_rotation(const std::string& w) {
    if (w.size() <= 1) return w;
    std::string best = w;
    std::string cur = w;
    for (std::size_t i = 1; i < w.size(); ++i) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

template <class R>
QMatrix<R> eval_word(const std::string& w, const QMatrix<R>& A, const QMatrix<R>& B) {
    if (!A.is_square() || A.rows != B.rows || B.rows != B.cols)
        throw std::invalid_argument("eval_word: need square matrices of equal size");
    QMatrix<R> M = QMatrix<R>::identity(A.rows);
    for (char c : w) M = M * (c == 'x' ? A : B);
    return M;
}

// ---------------------------------------------------------------------------
// Noncommutative polynomials: finite word -> coefficient maps.

struct NCPoly {
    std::map<std::string, Rat> terms;  // no zero coefficients stored

    static NCPoly letter(char c) {
        NCPoly p;
        p.terms[std::string(1, c)] = 1;
        return p;
    }
    static NCPoly x() { return letter('x'); }
    static NCPoly y() { return letter('y'); }
    static NCPoly one() {
        NCPoly p;
        p.terms[""] = 1;
        return p;
    }
    static NCPoly word(const std::string& w, Rat coeff = Rat(1)) {
        NCPoly p;
        if (coeff != 0) p.terms[w] = coeff;
        return p;
    }

    bool operator==(const NCPoly&) const = default;
    bool is_zero() const { return terms.empty(); }

    void add_term(const std::string& w, const Rat& c) {
        auto it = terms.find(w);
        if (it == terms.end()) {
            if (c != 0) terms[w] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    NCPoly operator+(const NCPoly& o) const {
        NCPoly r = *this;
        for (const auto& [w, c] : o.terms) r.add_term(w, c);
        return r;
    }
    NCPoly operator-(const NCPoly& o) const {
        NCPoly r = *this;
        for (const auto& [w, c] : o.terms) r.add_term(w, -c);
        return r;
    }
    NCPoly operator-() const {
        NCPoly r;
        for (const auto& [w, c] : terms) r.terms[w] = -c;
        return r;
    }
    NCPoly operator*(const NCPoly& o) const {
        NCPoly r;
        for (const auto& [w1, c1] : terms)
            for (const auto& [w2, c2] : o.terms) r.add_term(w1 + w2, c1 * c2);
        return r;
    }
    NCPoly operator*(const Rat& s) const {
        NCPoly r;
        if (s == 0) return r;
        for (const auto& [w, c] : terms) r.terms[w] = c * s;
        return r;
    }

    NCPoly pow(unsigned k) const {
        NCPoly r = one();
        for (unsigned i = 0; i < k; ++i) r = r * *this;
        return r;
    }
};

inline NCPoly nc_commutator(const NCPoly& a, const NCPoly& b) { return a * b - b * a; }

// Deletion derivation: sum over occurrences of var, removing one occurrence
// (neighbors merge). Matches the coefficient of alpha in p(x + alpha, y).
inline NCPoly partial_derivative(const NCPoly& p, char var) {
    NCPoly r;
    for (const auto& [w, c] : p.terms)
        for (std::size_t i = 0; i < w.size(); ++i)
            if (w[i] == var) r.add_term(w.substr(0, i) + w.substr(i + 1), c);
    return r;
}

template <class R>
QMatrix<R> eval_ncpoly(const NCPoly& p, const QMatrix<R>& A, const QMatrix<R>& B) {
    QMatrix<R> M(A.rows, A.rows);
    for (const auto& [w, c] : p.terms) {
        R coeff;
        if constexpr (scalar_traits<R>::exact) coeff = c;
        else coeff = to_double(c);
        M = M + eval_word(w, A, B).scaled(Quaternion<R>(coeff));
    }
    return M;
}

// ---------------------------------------------------------------------------
// Trace polynomials: real-linear combinations of products Tr(w1)...Tr(wr),
// each factor stored as its canonical necklace, factors sorted.

using TraceTerm = std::vector<std::string>;

struct TracePoly {
    std::map<TraceTerm, Rat> terms;

    static TracePoly trace_word(const std::string& w, Rat coeff = Rat(1)) {
        TracePoly t;
        std::string cw = canonical_rotation(w);
        if (coeff != 0) t.terms[{cw}] = coeff;
        return t;
    }

    bool operator==(const TracePoly&) const = default;
    bool is_zero() const { return terms.empty(); }

    void add_term(TraceTerm f, const Rat& c) {
        std::sort(f.begin(), f.end());
        auto it = terms.find(f);
        if (it == terms.end()) {
            if (c != 0) terms[std::move(f)] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    TracePoly operator+(const TracePoly& o) const {
        TracePoly r = *this;
        for (const auto& [f, c] : o.terms) r.add_term(f, c);
        return r;
    }
    TracePoly operator-(const TracePoly& o) const {
        TracePoly r = *this;
        for (const auto& [f, c] : o.terms) r.add_term(f, -c);
        return r;
    }
    TracePoly operator-() const {
        TracePoly r;
        for (const auto& [f, c] : terms) r.terms[f] = -c;
        return r;
    }
    TracePoly operator*(const TracePoly& o) const {
        TracePoly r;
        for (const auto& [f1, c1] : terms)
            for (const auto& [f2, c2] : o.terms) {
                TraceTerm f = f1;
                f.insert(f.end(), f2.begin(), f2.end());
                r.add_term(std::move(f), c1 * c2);
            }
        return r;
    }
    TracePoly operator*(const Rat& s) const {
        TracePoly r;
        if (s == 0) return r;
        for (const auto& [f, c] : terms) r.terms[f] = c * s;
        return r;
    }

    // Total bidegree of each term must agree for homogeneous objects; this
    // reports the common bidegree or {-1,-1} for mixed/zero polynomials.
    std::pair<int, int> homogeneous_bidegree() const {
        std::pair<int, int> deg{-1, -1};
        for (const auto& [f, c] : terms) {
            int k = 0, l = 0;
            for (const auto& w : f) {
                auto [a, b] = bidegree(w);
                k += a;
                l += b;
            }
            if (deg.first == -1) deg = {k, l};
            else if (deg != std::pair<int, int>{k, l}) return {-1, -1};
        }
        return deg;
    }
};

// Wraps Tr around a noncommutative polynomial, canonicalizing by cyclicity.
inline TracePoly trace_reduce(const NCPoly& p) {
    TracePoly t;
    for (const auto& [w, c] : p.terms) t.add_term({canonical_rotation(w)}, c);
    return t;
}

template <class R>
R eval_trace(const TracePoly& t, const QMatrix<R>& A, const QMatrix<R>& B) {
    R out{};
    for (const auto& [factors, c] : t.terms) {
        R prod;
        if constexpr (scalar_traits<R>::exact) prod = c;
        else prod = to_double(c);
        for (const auto& w : factors) prod = static_cast<R>(prod * qtrace(eval_word(w, A, B)));
        out += prod;
    }
    return out;
}

// Derivation on trace polynomials: product rule over factors, deletion
// derivation inside each trace.
inline TracePoly derive_trace(const TracePoly& t, char var) {
    TracePoly out;
    for (const auto& [factors, c] : t.terms)
        for (std::size_t r = 0; r < factors.size(); ++r) {
            TracePoly dr = trace_reduce(partial_derivative(NCPoly::word(factors[r]), var));
            for (const auto& [df, dc] : dr.terms) {
                TraceTerm f;
                for (std::size_t s = 0; s < factors.size(); ++s)
                    if (s != r) f.push_back(factors[s]);
                f.insert(f.end(), df.begin(), df.end());
                out.add_term(std::move(f), c * dc);
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Text syntax: x, y, juxtaposition, ^k, [a,b], Tr(...), +, -, rationals.

std::string to_string(const NCPoly& p);
std::string to_string(const TracePoly& t);
NCPoly parse_ncpoly(const std::string& text);
TracePoly parse_tracepoly(const std::string& text);

}  // namespace quatlab

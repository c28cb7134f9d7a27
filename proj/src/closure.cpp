#include "quatlab/closure.hpp"

#include <algorithm>
#include <array>
#include <map>

namespace quatlab {

namespace {

std::vector<Rat> flatten(const QMatrixQ& M) {
    std::vector<Rat> v;
    v.reserve(4 * M.entries.size());
    for (const auto& q : M.entries) {
        v.push_back(q.a);
        v.push_back(q.b);
        v.push_back(q.c);
        v.push_back(q.d);
    }
    return v;
}

// Incrementally maintained RREF over Q; pivot -> normalized row.
struct Reducer {
    std::map<std::size_t, std::vector<Rat>> rows;

    void reduce(std::vector<Rat>& v) const {
        for (const auto& [p, row] : rows) {
            if (v[p] == 0) continue;
            Rat f = v[p];
            for (std::size_t j = p; j < v.size(); ++j) v[j] -= f * row[j];
        }
    }

    // Returns true (and absorbs the row) when v is independent of the span.
    bool try_add(std::vector<Rat> v) {
        reduce(v);
        std::size_t p = 0;
        while (p < v.size() && v[p] == 0) ++p;
        if (p == v.size()) return false;
        Rat inv = Rat(1) / v[p];
        for (std::size_t j = p; j < v.size(); ++j) v[j] *= inv;
        for (auto& [q, row] : rows) {
            if (row[p] == 0) continue;
            Rat f = row[p];
            for (std::size_t j = p; j < v.size(); ++j) row[j] -= f * v[j];
        }
        rows.emplace(p, std::move(v));
        return true;
    }

    bool contains(std::vector<Rat> v) const {
        reduce(v);
        for (const auto& x : v)
            if (x != 0) return false;
        return true;
    }
};

// Clears denominators; the multihomogeneous vanishing test is invariant under
// positive scaling of individual basis elements.
QMatrixQ integer_scaled(const QMatrixQ& M) {
    Int l = 1;
    for (const auto& q : M.entries)
        for (const Rat& x : {q.a, q.b, q.c, q.d}) l = lcm(l, denominator(x));
    return M.scaled(Quaternion<Rat>(Rat(l)));
}

}  // namespace

AlgebraBasis algebra_closure(const std::vector<QMatrixQ>& gens) {
    std::size_t n = gens.empty() ? 1 : gens[0].rows;
    for (const auto& g : gens)
        if (!g.is_square() || g.rows != n)
            throw std::invalid_argument("algebra_closure: need square matrices of equal size");

    AlgebraBasis alg;
    alg.n = n;
    Reducer red;
    auto add = [&](const QMatrixQ& M) {
        if (red.try_add(flatten(M))) {
            alg.basis.push_back(M);
            return true;
        }
        return false;
    };
    add(QMatrixQ::identity(n));
    for (const auto& g : gens) add(g);

    // Worklist closure: every new element gets multiplied against everything.
    for (std::size_t i = 0; i < alg.basis.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            add(alg.basis[i] * alg.basis[j]);
            if (j < i) add(alg.basis[j] * alg.basis[i]);
            if (alg.basis.size() == 4 * n * n) return alg;
        }
    return alg;
}

QMatrixQ span_sample(const AlgebraBasis& alg, Rng& rng, long bound) {
    QMatrixQ M(alg.n, alg.n);
    for (const auto& e : alg.basis)
        M = M + e.scaled(Quaternion<Rat>(Rat(rng.integer(bound))));
    return M;
}

bool in_span(const AlgebraBasis& alg, const QMatrixQ& M) {
    Reducer red;
    for (const auto& e : alg.basis) red.try_add(flatten(e));
    return red.contains(flatten(M));
}

RefuteResult<Rat> tr_comm_square_test(const AlgebraBasis& alg, int samples, Rng& rng) {
    for (int s = 0; s < samples; ++s) {
        QMatrixQ A = span_sample(alg, rng);
        QMatrixQ B = span_sample(alg, rng);
        Rat v = qtrace(mat_pow(commutator(A, B), 2));
        if (v > 0) return {false, A, B, v};
    }
    return {};
}

RefuteResult<Rat> nilpotent_closure_test(const AlgebraBasis& alg, NilpotentMode mode,
                                         int samples, Rng& rng) {
    std::vector<QMatrixQ> pool;
    auto consider = [&](const QMatrixQ& M) {
        if (pool.size() >= 64 || M.is_zero() || !is_nilpotent(M)) return;
        if (std::find(pool.begin(), pool.end(), M) == pool.end()) pool.push_back(M);
    };
    for (const auto& e : alg.basis) consider(e);
    for (std::size_t i = 0; i < alg.basis.size(); ++i)
        for (std::size_t j = 0; j < alg.basis.size(); ++j) {
            consider(alg.basis[i] * alg.basis[j]);
            consider(alg.basis[i] - alg.basis[j]);
        }
    for (int s = 0; s < samples; ++s) consider(span_sample(alg, rng));

    if (mode == NilpotentMode::sum) {
        for (const auto& p : pool)
            for (const auto& q : pool) {
                QMatrixQ sum = p + q;
                if (!is_nilpotent(sum)) return {false, p, q, Rat(0)};
            }
    } else {
        for (const auto& p : pool) {
            for (const auto& e : alg.basis) {
                if (!is_nilpotent(p * e)) return {false, p, e, Rat(0)};
                if (!is_nilpotent(e * p)) return {false, e, p, Rat(0)};
            }
            for (int s = 0; s < samples; ++s) {
                QMatrixQ X = span_sample(alg, rng);
                if (!is_nilpotent(p * X)) return {false, p, X, Rat(0)};
            }
        }
    }
    return {};
}

bool is_quasi_triangularizable(const AlgebraBasis& alg, std::size_t d_max) {
    const std::size_t d = alg.dimension();
    if (d > d_max)
        throw DimensionTooLarge("algebra dimension " + std::to_string(d) + " exceeds bound " +
                                std::to_string(d_max));

    std::vector<QMatrixQ> e(d);
    for (std::size_t i = 0; i < d; ++i) e[i] = integer_scaled(alg.basis[i]);

    // Pairwise commutators C[i][j] = [e_i, e_j].
    std::vector<std::vector<QMatrixQ>> C(d, std::vector<QMatrixQ>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) C[i][j] = commutator(e[i], e[j]);

    // Products of two commutators, cached.
    std::vector<QMatrixQ> P(d * d * d * d);
    std::vector<bool> have(d * d * d * d, false);
    auto prod = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t f) -> const QMatrixQ& {
        std::size_t idx = ((a * d + b) * d + c) * d + f;
        if (!have[idx]) {
            P[idx] = C[a][b] * C[c][f];
            have[idx] = true;
        }
        return P[idx];
    };
    auto trace_prod = [](const QMatrixQ& X, const QMatrixQ& Y) {
        Rat s;
        for (std::size_t i = 0; i < X.rows; ++i)
            for (std::size_t k = 0; k < X.cols; ++k) {
                const auto& x = X(i, k);
                const auto& y = Y(k, i);
                if (x.is_zero() || y.is_zero()) continue;
                s += x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d;
            }
        return Rat(s + s);
    };

    // Symmetrized coefficient of a_{i1}a_{i2}a_{i3} b_{j1}b_{j2}b_{j3} in
    // Tr([sum a_i e_i, sum b_j e_j]^3): sum over distinct orderings of the two
    // multisets. The form vanishes identically iff every coefficient does.
    auto distinct_perms = [](std::array<std::size_t, 3> t) {
        std::sort(t.begin(), t.end());
        std::vector<std::array<std::size_t, 3>> out;
        do out.push_back(t);
        while (std::next_permutation(t.begin(), t.end()));
        return out;
    };

    for (std::size_t i1 = 0; i1 < d; ++i1)
        for (std::size_t i2 = i1; i2 < d; ++i2)
            for (std::size_t i3 = i2; i3 < d; ++i3) {
                auto pa = distinct_perms({i1, i2, i3});
                for (std::size_t j1 = 0; j1 < d; ++j1)
                    for (std::size_t j2 = j1; j2 < d; ++j2)
                        for (std::size_t j3 = j2; j3 < d; ++j3) {
                            auto pb = distinct_perms({j1, j2, j3});
                            Rat s;
                            for (const auto& a : pa)
                                for (const auto& b : pb)
                                    s += trace_prod(prod(a[0], b[0], a[1], b[1]), C[a[2]][b[2]]);
                            if (s != 0) return false;
                        }
            }
    return true;
}

}  // namespace quatlab

#include "quatlab/linalg_exact.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace quatlab {

namespace {

std::size_t eliminate_rational(RatMatrix& m, std::vector<std::size_t>* pivot_cols) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && m[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        Rat inv = Rat(1) / m[rank][col];
        for (std::size_t j = col; j < cols; ++j) m[rank][j] *= inv;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            Rat f = m[r][col];
            for (std::size_t j = col; j < cols; ++j) m[r][j] -= f * m[rank][j];
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

}  // namespace

std::size_t rank_rational(RatMatrix m) { return eliminate_rational(m, nullptr); }

std::vector<std::vector<Rat>> kernel_rational(RatMatrix m) {
    const std::size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<std::size_t> pivots;
    std::size_t rank = eliminate_rational(m, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<Rat>> basis;
    for (std::size_t free_col = 0; free_col < cols; ++free_col) {
        if (is_pivot[free_col]) continue;
        std::vector<Rat> v(cols, Rat(0));
        v[free_col] = 1;
        for (std::size_t r = 0; r < rank; ++r) v[pivots[r]] = -m[r][free_col];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank_mod_prime(const RatMatrix& m, std::uint64_t p) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_p(m[i][j], p);

    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };

    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        std::uint64_t inv = powmod(a[rank][col], p - 2);
        for (std::size_t j = col; j < cols; ++j) a[rank][j] = mulmod(a[rank][j], inv);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            std::uint64_t f = a[r][col];
            for (std::size_t j = col; j < cols; ++j) {
                std::uint64_t sub = mulmod(f, a[rank][j]);
                a[r][j] = a[r][j] >= sub ? a[r][j] - sub : a[r][j] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

namespace {

std::vector<std::size_t> pivots_of_mod_matrix(std::vector<std::vector<std::uint64_t>> a,
                                              std::uint64_t p) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * y) % p);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[rank], a[piv]);
        std::uint64_t inv = powmod(a[rank][col], p - 2);
        for (std::size_t j = col; j < cols; ++j) a[rank][j] = mulmod(a[rank][j], inv);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (a[r][col] == 0) continue;
            std::uint64_t f = a[r][col];
            for (std::size_t j = col; j < cols; ++j) {
                std::uint64_t sub = mulmod(f, a[rank][j]);
                a[r][j] = a[r][j] >= sub ? a[r][j] - sub : a[r][j] + p - sub;
            }
        }
        pivots.push_back(col);
        ++rank;
    }
    return pivots;
}

std::vector<std::vector<std::uint64_t>> to_mod_matrix(const RatMatrix& m, std::uint64_t p) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> a(rows, std::vector<std::uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = mod_p(m[i][j], p);
    return a;
}

}  // namespace

std::vector<std::size_t> pivot_columns_mod(const RatMatrix& m, std::uint64_t p) {
    return pivots_of_mod_matrix(to_mod_matrix(m, p), p);
}

std::vector<std::size_t> independent_rows_mod(const RatMatrix& m, std::uint64_t p) {
    auto a = to_mod_matrix(m, p);
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::vector<std::uint64_t>> t(cols, std::vector<std::uint64_t>(rows));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = a[i][j];
    return pivots_of_mod_matrix(std::move(t), p);
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % n);
    };
    auto powmod = [&](std::uint64_t b, std::uint64_t e) {
        std::uint64_t r = 1;
        b %= n;
        while (e) {
            if (e & 1) r = mulmod(r, b);
            b = mulmod(b, b);
            e >>= 1;
        }
        return r;
    };
    // This witness set is deterministic for all 64-bit integers.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                            31ull, 37ull}) {
        std::uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

std::vector<std::uint64_t> random_primes(std::uint64_t seed, int count) {
    std::mt19937_64 eng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::uint64_t> dist(std::uint64_t(1) << 61,
                                                      (std::uint64_t(1) << 62) - 1);
    std::vector<std::uint64_t> out;
    while (static_cast<int>(out.size()) < count) {
        std::uint64_t c = dist(eng) | 1;
        if (is_prime_u64(c) && std::find(out.begin(), out.end(), c) == out.end())
            out.push_back(c);
    }
    return out;
}

RankResult rank_multimodular(const RatMatrix& m, const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw std::invalid_argument("rank_multimodular: no primes given");
    std::vector<std::size_t> ranks;
    for (auto p : primes) {
        try {
            ranks.push_back(rank_mod_prime(m, p));
        } catch (const std::domain_error&) {
            // denominator hit this prime; skip it
        }
    }
    if (!ranks.empty() &&
        std::all_of(ranks.begin(), ranks.end(), [&](std::size_t r) { return r == ranks[0]; }))
        return {ranks[0], true};
    return {rank_rational(m), false};
}

}  // namespace quatlab

#include "quatlab/ideal.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace quatlab {

namespace {

// Word-trace evaluations at one pair, cached per word.
struct SampleEval {
    QPair pair;
    std::map<std::string, Rat> cache;

    explicit SampleEval(QPair p) : pair(std::move(p)) {}

    const Rat& word_trace(const std::string& w) {
        auto it = cache.find(w);
        if (it == cache.end())
            it = cache.emplace(w, qtrace(eval_word(w, pair.first, pair.second))).first;
        return it->second;
    }
    Rat mono(const TraceTerm& t) {
        Rat prod(1);
        for (const auto& w : t) prod *= word_trace(w);
        return prod;
    }
    Rat poly(const TracePoly& f) {
        Rat s;
        for (const auto& [fac, c] : f.terms) s += c * mono(fac);
        return s;
    }
};

RatMatrix eval_matrix(std::vector<SampleEval>& samples, const std::vector<TraceTerm>& mons) {
    RatMatrix m(samples.size(), std::vector<Rat>(mons.size()));
    for (std::size_t i = 0; i < samples.size(); ++i)
        for (std::size_t j = 0; j < mons.size(); ++j) m[i][j] = samples[i].mono(mons[j]);
    return m;
}

std::uint64_t cell_seed(std::uint64_t seed, int k, int l) {
    std::uint64_t h = seed ^ 0xabcdef1234567890ULL;
    h = h * 6364136223846793005ULL + static_cast<std::uint64_t>(k) * 977 + 13;
    h = h * 6364136223846793005ULL + static_cast<std::uint64_t>(l) * 991 + 17;
    return h;
}

std::vector<SampleEval> make_evals(std::vector<QPair> pairs) {
    std::vector<SampleEval> out;
    out.reserve(pairs.size());
    for (auto& p : pairs) out.emplace_back(std::move(p));
    return out;
}

// Divides out content and denominators: primitive integer vector.
void make_primitive(std::vector<Rat>& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, denominator(x));
    Int g = 0;
    for (auto& x : v) {
        x *= l;
        g = gcd(g, numerator(x));
    }
    if (g == 0) return;
    for (auto& x : v) x /= Rat(g);
}

std::vector<std::size_t> pivot_columns_exact(const RatMatrix& m) {
    if (m.empty()) return {};
    const std::size_t rows = m.size(), cols = m[0].size();
    std::vector<std::vector<Rat>> red;  // forward-reduced independent columns
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < cols; ++j) {
        std::vector<Rat> v(rows);
        for (std::size_t i = 0; i < rows; ++i) v[i] = m[i][j];
        for (const auto& r : red) {
            std::size_t p = 0;
            while (r[p] == 0) ++p;
            if (v[p] == 0) continue;
            Rat f = v[p] / r[p];
            for (std::size_t i = 0; i < rows; ++i) v[i] -= f * r[i];
        }
        if (std::any_of(v.begin(), v.end(), [](const Rat& x) { return x != 0; })) {
            red.push_back(std::move(v));
            idx.push_back(j);
        }
    }
    return idx;
}

}  // namespace

std::vector<std::string> necklaces(int a, int b) {
    if (a < 0 || b < 0 || a + b < 1) throw std::invalid_argument("necklaces: need a+b >= 1");
    std::string w = std::string(a, 'x') + std::string(b, 'y');
    std::set<std::string> classes;
    do classes.insert(canonical_rotation(w));
    while (std::next_permutation(w.begin(), w.end()));
    return {classes.begin(), classes.end()};
}

std::vector<TraceTerm> invariant_monomials(int k, int l) {
    if (k < 0 || l < 0 || k + l < 1)
        throw std::invalid_argument("invariant_monomials: need k+l >= 1");
    struct Item {
        std::string w;
        int a, b;
    };
    std::vector<Item> items;
    for (int a = 0; a <= k; ++a)
        for (int b = 0; b <= l; ++b) {
            if (a + b < 1) continue;
            for (auto& w : necklaces(a, b)) items.push_back({w, a, b});
        }
    std::vector<TraceTerm> out;
    TraceTerm cur;
    auto rec = [&](auto&& self, std::size_t idx, int kr, int lr) -> void {
        if (kr == 0 && lr == 0) {
            TraceTerm t = cur;
            std::sort(t.begin(), t.end());
            out.push_back(std::move(t));
            return;
        }
        if (idx == items.size()) return;
        self(self, idx + 1, kr, lr);
        const Item& it = items[idx];
        if (it.a <= kr && it.b <= lr) {
            cur.push_back(it.w);
            self(self, idx, kr - it.a, lr - it.b);
            cur.pop_back();
        }
    };
    rec(rec, 0, k, l);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<QPair> sample_w2(Rng& rng, int count, std::size_t n, long bound) {
    std::vector<QPair> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        auto [L, Linv] = random_unipotent_lower(rng, n, bound);
        QMatrixQ T1 = random_integer_upper(rng, n, bound);
        QMatrixQ T2 = random_integer_upper(rng, n, bound);
        out.emplace_back(L * T1 * Linv, L * T2 * Linv);
    }
    return out;
}

std::vector<QPair> sample_generic(Rng& rng, int count, std::size_t n, long bound) {
    std::vector<QPair> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.emplace_back(random_integer_qmatrix(rng, n, bound),
                         random_integer_qmatrix(rng, n, bound));
    return out;
}

Rat eval_monomial(const TraceTerm& mono, const QMatrixQ& A, const QMatrixQ& B) {
    Rat prod(1);
    for (const auto& w : mono) prod *= qtrace(eval_word(w, A, B));
    return prod;
}

BidegreeEntry dim_bigraded(int k, int l, const IdealConfig& cfg) {
    BidegreeEntry e;
    e.k = k;
    e.l = l;
    if (k + l < 1) {
        e.rank_stable = true;
        return e;
    }
    auto mons = invariant_monomials(k, l);
    e.monomials = mons.size();
    std::size_t N = 2 * mons.size() + cfg.extra_samples;
    e.samples_used = N;

    Rng rng(cell_seed(cfg.seed, k, l));
    auto primes = random_primes(cell_seed(cfg.seed, 63, 101), cfg.prime_count);
    auto gs = make_evals(sample_generic(rng, static_cast<int>(N), 2, cfg.entry_bound));
    auto ws = make_evals(sample_w2(rng, static_cast<int>(N), 2, cfg.entry_bound));

    auto rg = rank_multimodular(eval_matrix(gs, mons), primes);
    auto rw = rank_multimodular(eval_matrix(ws, mons), primes);
    e.span_dim = rg.rank;
    e.rank_on_w2 = rw.rank;
    e.d_kl = static_cast<long>(rg.rank) - static_cast<long>(rw.rank);
    e.rank_stable = rg.stable && rw.stable;
    return e;
}

std::vector<NamedGenerator> table2_generators() {
    static const std::vector<std::tuple<std::string, int, int, std::string>> defs = {
        {"f1", 3, 3, "Tr(xy^2x[x,y])"},
        {"f2", 3, 4, "Tr(xy^3x[x,y])"},
        {"f3", 4, 3, "Tr(yx^3y[x,y])"},
        {"f4", 3, 5, "Tr(y^2x^2y^2[x,y])"},
        {"f5", 4, 4, "Tr(xy^3x[x^2,y])"},
        {"f6", 4, 4, "Tr([x,y][[x^2,y],[x,y^2]])"},
        {"f7", 5, 3, "Tr(x^2y^2x^2[x,y])"},
        {"f8", 3, 6, "Tr(yxy^3xy[x,y])"},
        {"f9", 3, 6, "Tr([[x,y],y]^3)"},
        {"f10", 4, 5, "Tr(y^2x^3y^2[x,y])"},
        {"f11", 4, 5, "Tr([x,y][x,y^2][x^2,y^2])"},
        {"f12", 4, 5, "Tr([[x,y],x][[x,y],y]^2)"},
        {"f13", 5, 4, "Tr(x^2y^3x^2[x,y])"},
        {"f14", 5, 4, "Tr([x,y][x^2,y][x^2,y^2])"},
        {"f15", 5, 4, "Tr([[x,y],y][[x,y],x]^2)"},
        {"f16", 6, 3, "Tr(xyx^3yx[x,y])"},
        {"f17", 6, 3, "Tr([[x,y],x]^3)"},
    };
    std::vector<NamedGenerator> out;
    for (const auto& [name, k, l, text] : defs)
        out.push_back({name, k, l, parse_tracepoly(text)});
    return out;
}

GeneratorReport check_generator(const NamedGenerator& g, int samples, const IdealConfig& cfg) {
    GeneratorReport rep;
    rep.samples = samples;
    rep.bidegree_ok = g.poly.homogeneous_bidegree() == std::pair<int, int>{g.k, g.l};
    Rng rng(cell_seed(cfg.seed, g.k, g.l) ^ 0x5151);
    rep.vanishes_on_w2 = true;
    for (auto& p : sample_w2(rng, samples, 2, cfg.entry_bound)) {
        SampleEval ev(p);
        if (ev.poly(g.poly) != 0) rep.vanishes_on_w2 = false;
    }
    for (auto& p : sample_generic(rng, samples, 2, cfg.entry_bound)) {
        SampleEval ev(p);
        if (ev.poly(g.poly) != 0) ++rep.nonzero_generic;
    }
    return rep;
}

namespace {

struct PoolGen {
    int k, l;
    TracePoly poly;
};

MsgCell compute_cell(int k, int l, const std::vector<PoolGen>& pool, const IdealConfig& cfg) {
    MsgCell cell;
    cell.k = k;
    cell.l = l;
    if (k + l < 1) return cell;

    auto mons = invariant_monomials(k, l);
    std::size_t N = 2 * mons.size() + cfg.extra_samples;
    Rng rng(cell_seed(cfg.seed, k, l) ^ 0x77);
    auto primes = random_primes(cell_seed(cfg.seed, 63, 101), cfg.prime_count);
    auto gs = make_evals(sample_generic(rng, static_cast<int>(N), 2, cfg.entry_bound));
    auto ws = make_evals(sample_w2(rng, static_cast<int>(N), 2, cfg.entry_bound));

    // Independent columns: a monomial subset that is a function basis of the
    // span, so kernels below contain no syzygies.
    RatMatrix G = eval_matrix(gs, mons);
    auto cols = pivot_columns_mod(G, primes[0]);
    if (rank_mod_prime(G, primes[1]) != cols.size()) cols = pivot_columns_exact(G);
    std::vector<TraceTerm> basis_mons;
    for (auto j : cols) basis_mons.push_back(mons[j]);
    const std::size_t s = basis_mons.size();

    RatMatrix GS(N, std::vector<Rat>(s));
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = 0; j < s; ++j) GS[i][j] = G[i][cols[j]];
    RatMatrix W = eval_matrix(ws, basis_mons);
    auto rw = rank_multimodular(W, primes);
    cell.rank_stable = rw.stable;
    cell.d_kl = static_cast<long>(s) - static_cast<long>(rw.rank);

    // Products of known generators with complementary monomials span the
    // lower-degree part of the ideal at this bidegree.
    RatMatrix prod_rows;
    for (const auto& g : pool) {
        if (g.k > k || g.l > l) continue;
        std::vector<TraceTerm> comp;
        if (g.k == k && g.l == l) comp.push_back({});
        else comp = invariant_monomials(k - g.k, l - g.l);
        for (const auto& h : comp) {
            std::vector<Rat> row(N);
            for (std::size_t i = 0; i < N; ++i) row[i] = gs[i].poly(g.poly) * gs[i].mono(h);
            prod_rows.push_back(std::move(row));
        }
    }
    cell.dim_prev = prod_rows.empty() ? 0 : rank_multimodular(prod_rows, primes).rank;
    cell.new_count = cell.d_kl - static_cast<long>(cell.dim_prev);
    if (cell.new_count <= 0) return cell;

    // Exact kernel on an independent row subset, re-validated on every sample.
    auto rows_idx = independent_rows_mod(W, primes[0]);
    RatMatrix Wr;
    for (auto i : rows_idx) Wr.push_back(W[i]);
    std::vector<std::vector<Rat>> ker;
    for (int guard = 0; guard < 8; ++guard) {
        ker = kernel_rational(Wr);
        bool ok = true;
        for (std::size_t i = 0; i < N && ok; ++i) {
            for (auto& c : ker) {
                Rat dot;
                for (std::size_t j = 0; j < s; ++j) dot += W[i][j] * c[j];
                if (dot != 0) {
                    Wr.push_back(W[i]);
                    ok = false;
                    break;
                }
            }
        }
        if (ok) break;
    }
    for (auto& c : ker) make_primitive(c);

    // Keep kernel elements that enlarge the span beyond the known-ideal part.
    RatMatrix seen = prod_rows;
    std::size_t base_rank = cell.dim_prev;
    for (auto& c : ker) {
        if (static_cast<long>(cell.new_generators.size()) == cell.new_count) break;
        std::vector<Rat> row(N);
        for (std::size_t i = 0; i < N; ++i) {
            Rat v;
            for (std::size_t j = 0; j < s; ++j) v += GS[i][j] * c[j];
            row[i] = std::move(v);
        }
        RatMatrix trial = seen;
        trial.push_back(row);
        if (rank_multimodular(trial, primes).rank > base_rank) {
            seen.push_back(std::move(row));
            ++base_rank;
            TracePoly f;
            for (std::size_t j = 0; j < s; ++j)
                if (c[j] != 0) f.add_term(basis_mons[j], c[j]);
            cell.new_generators.push_back(std::move(f));
        }
    }
    return cell;
}

}  // namespace

MsgStep msg_step(int m, const IdealConfig& cfg) {
    if (m < 1 || m > 10) throw std::invalid_argument("msg_step: m must be in 1..10");
    std::vector<PoolGen> pool;
    MsgStep result;
    result.m = m;
    for (int step = 6; step <= m; ++step) {
        std::vector<MsgCell> cells;
        for (int k = step; k >= 0; --k) {
            int l = step - k;
            cells.push_back(compute_cell(k, l, pool, cfg));
        }
        for (auto& c : cells)
            for (auto& g : c.new_generators) pool.push_back({c.k, c.l, g});
        if (step == m) result.cells = std::move(cells);
    }
    return result;
}

std::vector<Rat> trace_gradient(const TracePoly& f, const QMatrixQ& A, const QMatrixQ& B) {
    if (A.rows != 2 || A.cols != 2 || B.rows != 2 || B.cols != 2)
        throw std::invalid_argument("trace_gradient: need 2x2 matrices");
    std::vector<Rat> grad(32);
    SampleEval ev({A, B});
    for (const auto& [factors, coeff] : f.terms) {
        for (std::size_t r = 0; r < factors.size(); ++r) {
            Rat outer = coeff;
            for (std::size_t t = 0; t < factors.size(); ++t)
                if (t != r) outer *= ev.word_trace(factors[t]);
            if (outer == 0) continue;
            const std::string& w = factors[r];
            // prefix and suffix products around each position
            std::vector<QMatrixQ> pre(w.size() + 1), suf(w.size() + 1);
            pre[0] = QMatrixQ::identity(2);
            suf[w.size()] = QMatrixQ::identity(2);
            for (std::size_t p = 0; p < w.size(); ++p)
                pre[p + 1] = pre[p] * (w[p] == 'x' ? A : B);
            for (std::size_t p = w.size(); p > 0; --p)
                suf[p - 1] = (w[p - 1] == 'x' ? A : B) * suf[p];
            for (std::size_t p = 0; p < w.size(); ++p) {
                std::size_t base = (w[p] == 'x') ? 0 : 16;
                QMatrixQ M = suf[p + 1] * pre[p];
                for (std::size_t i = 0; i < 2; ++i)
                    for (std::size_t j = 0; j < 2; ++j) {
                        const auto& q = M(j, i);
                        std::size_t o = base + (i * 2 + j) * 4;
                        grad[o + 0] += outer * 2 * q.a;
                        grad[o + 1] -= outer * 2 * q.b;
                        grad[o + 2] -= outer * 2 * q.c;
                        grad[o + 3] -= outer * 2 * q.d;
                    }
            }
        }
    }
    return grad;
}

std::size_t jacobian_rank(const std::vector<TracePoly>& fs, const QMatrixQ& A,
                          const QMatrixQ& B) {
    RatMatrix J;
    for (const auto& f : fs) J.push_back(trace_gradient(f, A, B));
    return rank_rational(std::move(J));
}

TracePoly derive_generator(const TracePoly& p, char var, int validation_samples, Rng& rng) {
    auto ws = sample_w2(rng, validation_samples, 2, 2);
    for (auto& pr : ws) {
        SampleEval ev(pr);
        if (ev.poly(p) != 0) throw NotInIdeal("input does not vanish on sampled pairs");
    }
    TracePoly out = derive_trace(p, var);
    for (auto& pr : ws) {
        SampleEval ev(pr);
        if (ev.poly(out) != 0) throw NotInIdeal("derived polynomial fails validation");
    }
    return out;
}

}  // namespace quatlab

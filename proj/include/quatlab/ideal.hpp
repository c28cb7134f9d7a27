#pragma once

#include "quatlab/linalg_exact.hpp"
#include "quatlab/random_gen.hpp"
#include "quatlab/words.hpp"

#include <string>
#include <utility>
#include <vector>

namespace quatlab {

struct RankUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInIdeal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All cyclic-equivalence classes of words with a x's and b y's, represented by
// the lexicographically minimal rotation, each class once.
std::vector<std::string> necklaces(int a, int b);

// All multisets of necklaces with total bidegree (k, l), factors sorted.
std::vector<TraceTerm> invariant_monomials(int k, int l);

using QPair = std::pair<QMatrixQ, QMatrixQ>;

// Conjugated upper-triangular pairs l (T1, T2) l^{-1} with unipotent integral
// l: exact, integral, and dense enough in the triangularizable pairs for rank
// purposes.
std::vector<QPair> sample_w2(Rng& rng, int count, std::size_t n = 2, long bound = 2);

// Unconstrained small integral pairs.
std::vector<QPair> sample_generic(Rng& rng, int count, std::size_t n = 2, long bound = 2);

// Product of word traces at a pair; exact.
Rat eval_monomial(const TraceTerm& mono, const QMatrixQ& A, const QMatrixQ& B);

struct IdealConfig {
    std::uint64_t seed = 0;
    int prime_count = 3;
    long entry_bound = 2;
    int extra_samples = 32;
};

struct BidegreeEntry {
    int k = 0, l = 0;
    std::size_t monomials = 0;
    std::size_t span_dim = 0;    // dim of the function span of the monomials
    std::size_t rank_on_w2 = 0;  // rank of the evaluation on triangularizable pairs
    long d_kl = 0;               // span_dim - rank_on_w2
    std::size_t samples_used = 0;
    bool rank_stable = false;
};

// Evaluation-rank computation of span_dim and d_{k,l}; multi-modular with
// exact fallback.
BidegreeEntry dim_bigraded(int k, int l, const IdealConfig& cfg = {});

struct NamedGenerator {
    std::string name;
    int k = 0, l = 0;
    TracePoly poly;
};

// The seventeen generators f1..f17 with their declared bidegrees.
std::vector<NamedGenerator> table2_generators();

struct GeneratorReport {
    bool bidegree_ok = false;
    bool vanishes_on_w2 = false;  // exact zero on every sampled pair
    int nonzero_generic = 0;      // count of generic samples with nonzero value
    int samples = 0;
};

GeneratorReport check_generator(const NamedGenerator& g, int samples, const IdealConfig& cfg = {});

struct MsgCell {
    int k = 0, l = 0;
    long d_kl = 0;
    std::size_t dim_prev = 0;  // dimension contributed by lower-degree generators
    long new_count = 0;
    std::vector<TracePoly> new_generators;
    bool rank_stable = true;
};

struct MsgStep {
    int m = 0;
    std::vector<MsgCell> cells;  // bidegrees with k + l = m
};

// One step of the minimal-generating-set construction; earlier steps are
// computed internally. m <= 10.
MsgStep msg_step(int m, const IdealConfig& cfg = {});

// Exact gradient of a trace polynomial in the 32 real coordinates of a 2x2
// pair (matrix, entry row-major, component 1/i/j/k).
std::vector<Rat> trace_gradient(const TracePoly& f, const QMatrixQ& A, const QMatrixQ& B);

std::size_t jacobian_rank(const std::vector<TracePoly>& fs, const QMatrixQ& A,
                          const QMatrixQ& B);

// Derivation step of the generator-production method; both the input and the
// output are validated to vanish on fresh triangularizable samples.
TracePoly derive_generator(const TracePoly& p, char var, int validation_samples, Rng& rng);

}  // namespace quatlab

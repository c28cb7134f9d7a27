#pragma once

#include "quatlab/rational.hpp"

#include <cstdint>
#include <vector>

namespace quatlab {

using RatMatrix = std::vector<std::vector<Rat>>;

// Plain Gaussian elimination over Q.
std::size_t rank_rational(RatMatrix m);

// Basis of {c : M c = 0} (coefficient/null space of the columns).
std::vector<std::vector<Rat>> kernel_rational(RatMatrix m);

// Rank of the matrix reduced modulo a prime. Throws std::domain_error when a
// denominator vanishes mod p (caller retries with another prime).
std::size_t rank_mod_prime(const RatMatrix& m, std::uint64_t p);

// Pivot columns found by Gaussian elimination mod p; the returned columns are
// linearly independent and span the column space (mod p).
std::vector<std::size_t> pivot_columns_mod(const RatMatrix& m, std::uint64_t p);

// A maximal set of linearly independent rows (mod p).
std::vector<std::size_t> independent_rows_mod(const RatMatrix& m, std::uint64_t p);

// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Random 62-bit primes from a seeded engine.
std::vector<std::uint64_t> random_primes(std::uint64_t seed, int count);

// Rank by agreement across several primes, with exact elimination as the
// escalation path when the primes disagree. rank mod p <= true rank always,
// so agreement across independent primes is strong evidence of exactness.
struct RankResult {
    std::size_t rank = 0;
    bool stable = false;  // primes agreed without exact escalation
};
RankResult rank_multimodular(const RatMatrix& m, const std::vector<std::uint64_t>& primes);

}  // namespace quatlab

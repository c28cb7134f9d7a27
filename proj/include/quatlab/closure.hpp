#pragma once

#include "quatlab/qmatrix.hpp"
#include "quatlab/random_gen.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <vector>

namespace quatlab {

struct DimensionTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Basis of a unital R-subalgebra of M_n(H); element 0 is always the identity.
struct AlgebraBasis {
    std::size_t n = 0;
    std::vector<QMatrixQ> basis;

    std::size_t dimension() const { return basis.size(); }
};

// Smallest unital R-subalgebra containing the generators: grows the span by
// pairwise products until rank stabilizes. d <= 4n^2.
AlgebraBasis algebra_closure(const std::vector<QMatrixQ>& gens);

// Random element of the span with small integer coefficients.
QMatrixQ span_sample(const AlgebraBasis& alg, Rng& rng, long bound = 3);

// True when M lies in the span of the basis.
bool in_span(const AlgebraBasis& alg, const QMatrixQ& M);

template <class R>
struct RefuteResult {
    bool pass = true;  // no counterexample found within the sample budget
    QMatrix<R> A, B;
    R value{};
};

// Randomized refuter for "Tr([A,B]^2) <= 0 on the algebra". pass means no
// witness was found, not a proof.
RefuteResult<Rat> tr_comm_square_test(const AlgebraBasis& alg, int samples, Rng& rng);

enum class NilpotentMode { sum, product };

// Randomized refuter for closure of nilpotents under sum / absorption under
// product. Nilpotency is decided exactly via chi(A)^{2n} = 0.
RefuteResult<Rat> nilpotent_closure_test(const AlgebraBasis& alg, NilpotentMode mode,
                                         int samples, Rng& rng);

// Decides whether Tr([A,B]^3) vanishes identically on the algebra, by exact
// expansion of the multihomogeneous (3,3) form over basis multisets. Complete
// decision, not sampling.
bool is_quasi_triangularizable(const AlgebraBasis& alg, std::size_t d_max = 12);

// The three expansions of the commutator-cube trace; they agree exactly.
template <class R>
std::array<R, 3> tr_comm_cube_three(const QMatrix<R>& A, const QMatrix<R>& B) {
    QMatrix<R> C = commutator(A, B);
    QMatrix<R> A2 = A * A, B2 = B * B;
    R direct = qtrace(C * C * C);
    R second = static_cast<R>(qtrace(A2 * B2 * A * B - B2 * A2 * B * A) * scalar_traits<R>::from_int(3));
    R third = static_cast<R>(-(qtrace(A * B2 * A * C) * scalar_traits<R>::from_int(3)));
    return {direct, second, third};
}

}  // namespace quatlab

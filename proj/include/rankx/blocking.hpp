#ifndef RANKX_BLOCKING_HPP
#define RANKX_BLOCKING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankx/extract.hpp"

namespace rankx {

// Projective points are stored normalized: first nonzero coordinate is 1.
std::vector<uint64_t> normalize_projective(const Field& F, std::vector<uint64_t> v);

struct BlockingSet {
    bool projective = true;
    Field F;
    unsigned k = 0;
    std::vector<std::vector<uint64_t>> points;  // deduplicated, sorted
    std::string source;
    std::optional<unsigned> s;
    std::optional<uint64_t> claimed_size_bound;
    bool verified = false;
};

// Union over the family of the projectivized row spans (Theorem 6.1 shape);
// requires r = s + 1. Rank-deficient members contribute their smaller span.
BlockingSet disperser_to_blocking(const MatrixFamily& fam, unsigned s);

// All scalar multiples of B's points plus the origin.
BlockingSet affine_cone(const BlockingSet& B);

struct BlockingCheck {
    bool holds = false;
    uint64_t subspaces_checked = 0;
    bool exhaustive = true;
    // strong mode: a codim-s subspace Sigma whose B-intersection does not span
    // it, plus a hyperplane H of Sigma containing that intersection
    std::optional<Subspace> counterexample_sigma;
    std::optional<Subspace> counterexample_hyperplane;
    // affine mode: linear part (RREF rows) and offset of a missed coset
    std::optional<Matrix> counterexample_normals;
    std::optional<std::vector<uint64_t>> counterexample_rhs;
};

// B cap Sigma must span Sigma for every codimension-s linear subspace Sigma.
BlockingCheck verify_strong_blocking(const BlockingSet& B, unsigned s,
                                     uint64_t budget = kDefaultBudget, unsigned threads = 0);

// B must meet every coset of every codimension-s linear subspace.
BlockingCheck verify_affine_blocking(const BlockingSet& B, unsigned s,
                                     uint64_t budget = kDefaultBudget, unsigned threads = 0);

struct BiasedSet {
    Field F;
    unsigned k = 0;
    std::vector<std::vector<uint64_t>> vectors;  // multiset
    std::optional<double> measured_bias;
    // exact character-sum fraction when the characteristic is 2
    std::optional<std::pair<int64_t, uint64_t>> exact_bias;
    double heuristic_bias = 0;
    unsigned m = 0;
};

// max over nontrivial additive characters of |E_{x in S} chi(x)|. Exact
// integer sums for p = 2; residue-class accumulation otherwise.
double bias(BiasedSet& S, uint64_t budget = kDefaultBudget);

struct AffineSubspace {
    Matrix basis;                 // dim x k rows spanning the linear part
    std::vector<uint64_t> offset; // length k
};

// L1 norm of the Fourier transform of the subspace indicator; equals 1.
double subspace_indicator_l1(const AffineSubspace& V, const Field& F, unsigned k,
                             uint64_t budget = kDefaultBudget);

// E_{x in S} f(x) for f = indicator of an affine subspace.
double sample_mean_indicator(const BiasedSet& S, const AffineSubspace& V);

struct BiasedToBlocking {
    bool affine_ok = false;
    bool strong_ok = false;
    double threshold_affine = 0;  // q^{-s}
    double threshold_strong = 0;  // (q-1) / (2 q^{s+1})
    std::optional<BlockingSet> affine_set;
    std::optional<BlockingSet> strong_set;
};

BiasedToBlocking biased_to_blocking(BiasedSet& S, unsigned s, uint64_t budget = kDefaultBudget);

// Trace-of-powers generator: v_x[i] = Tr_{F_{q^m}/F_q}(x^{e_i}) where e_i is
// the i-th positive integer coprime to the characteristic. Exponents divisible
// by p are Frobenius-redundant and would force bias 1 on some character, so
// they are skipped; the measured bias stays authoritative either way.
BiasedSet build_biased_set(const Field& Fq, unsigned k, unsigned m);

struct BoundTable {
    bigint affine_lower;     // Eq. (2) at codimension s+1
    bigint strong_lower;     // Eq. (3) at codimension s
    bigint jamison;          // (q-1)k + 1
    bigint disperser_bound;  // 2 n q^s when n is supplied, else 0
};

BoundTable bound_tables(uint64_t q, unsigned k, unsigned s, uint64_t n = 0);

}  // namespace rankx

#endif

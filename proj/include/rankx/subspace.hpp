#ifndef RANKX_SUBSPACE_HPP
#define RANKX_SUBSPACE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <vector>

#include "rankx/matrix.hpp"

namespace rankx {

using bigint = boost::multiprecision::cpp_int;

// Number of r-dimensional subspaces of F_q^k.
bigint gaussian_binomial(unsigned k, unsigned r, const bigint& q);

// Subspace of F_q^k held as a canonical reduced row-echelon basis, so two
// equal subspaces compare equal entrywise.
struct Subspace {
    unsigned ambient = 0;
    unsigned dim = 0;
    Matrix basis;  // dim x ambient, RREF

    bool operator==(const Subspace& o) const {
        return ambient == o.ambient && dim == o.dim && basis == o.basis;
    }
};

// Reduced row echelon form; returns the pivot columns.
std::vector<unsigned> rref_inplace(const Field& F, uint64_t* m, unsigned rows, unsigned cols);

Subspace rowspan(const Matrix& rows);
Subspace zero_subspace(const Field& F, unsigned ambient);
Subspace orthogonal_complement(const Subspace& V);

// dim(V cap W) > 0, decided by rank of the stacked bases.
bool intersects_nontrivially(const Subspace& V, const Subspace& W);

// Canonical full-rank k x r matrices, one per r-dimensional column space:
// the transpose is in RREF. Order: pivot row sets ascending lexicographically,
// then free entries as base-q digits (first free position least significant).
class SubspaceStream {
public:
    SubspaceStream(Field F, unsigned k, unsigned r);

    const bigint& total() const { return total_; }
    // throws budget_exceeded when the total does not fit the budget
    uint64_t total_within(uint64_t budget) const;

    bool next(Matrix& out);  // fills a k x r matrix; false when exhausted
    void seek(const bigint& index);
    void reset() { seek(0); }

    // uniform canonical representative (pivot set by measure, free entries
    // uniform); independent of the stream position
    Matrix sample(Rng& rng) const;

private:
    struct Block {
        std::vector<unsigned> pivots;          // r ascending row indices
        std::vector<std::pair<unsigned, unsigned>> free_pos;  // (row, col) of M
        bigint count;                          // q^{#free}
    };
    void build_blocks();
    Matrix materialize(const Block& b, const std::vector<uint64_t>& digits) const;

    Field F_;
    unsigned k_ = 0, r_ = 0;
    std::vector<Block> blocks_;
    bigint total_ = 0;
    size_t block_idx_ = 0;
    std::vector<uint64_t> digits_;
    bool done_ = false;
};

}  // namespace rankx

#endif

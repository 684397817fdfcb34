#ifndef RANKX_MATRIX_HPP
#define RANKX_MATRIX_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "rankx/field.hpp"

namespace rankx {

// Dense matrix of field element codes, row-major.
struct Matrix {
    Matrix() = default;
    Matrix(Field f, unsigned r, unsigned c)
        : F(std::move(f)), rows(r), cols(c), a(size_t(r) * c, 0) {}

    Field F;
    unsigned rows = 0, cols = 0;
    std::vector<uint64_t> a;

    uint64_t& at(unsigned i, unsigned j) { return a[size_t(i) * cols + j]; }
    uint64_t at(unsigned i, unsigned j) const { return a[size_t(i) * cols + j]; }

    bool operator==(const Matrix& o) const {
        return rows == o.rows && cols == o.cols && a == o.a && F == o.F;
    }
};

Matrix identity(const Field& F, unsigned n);
Matrix mat_mul(const Matrix& A, const Matrix& B);
Matrix transpose(const Matrix& A);

unsigned mat_rank(const Matrix& M);
uint64_t mat_det(const Matrix& M);  // throws std::invalid_argument if non-square
std::pair<unsigned, uint64_t> mat_rank_det(const Matrix& M);  // square input

// In-place elimination on a scratch row-major buffer, returns rank.
unsigned eliminate(const Field& F, uint64_t* data, unsigned rows, unsigned cols);

// Sum over all size-r column subsets I of det(A_I) * det(B^I). Computed by
// explicit minor expansion so tests can compare it against det(A*B).
uint64_t cauchy_binet_expand(const Matrix& A, const Matrix& B);

// Scans columns k-1, k-2, ..., 0 and keeps those outside the span of the
// already-selected ones. Returns the selected indices sorted ascending
// (0-based). Input must have full row rank.
std::vector<unsigned> greedy_column_select(const Matrix& M);

Matrix random_matrix(const Field& F, unsigned rows, unsigned cols, Rng& rng);

}  // namespace rankx

#endif

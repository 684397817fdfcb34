#include "rankx/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankx {

Matrix identity(const Field& F, unsigned n) {
    Matrix M(F, n, n);
    for (unsigned i = 0; i < n; ++i) M.at(i, i) = 1;
    return M;
}

Matrix transpose(const Matrix& A) {
    Matrix T(A.F, A.cols, A.rows);
    for (unsigned i = 0; i < A.rows; ++i)
        for (unsigned j = 0; j < A.cols; ++j) T.at(j, i) = A.at(i, j);
    return T;
}

Matrix mat_mul(const Matrix& A, const Matrix& B) {
    if (A.cols != B.rows || A.F != B.F) throw std::invalid_argument("mat_mul: shape or field mismatch");
    const Field& F = A.F;
    Matrix C(F, A.rows, B.cols);
    for (unsigned i = 0; i < A.rows; ++i)
        for (unsigned t = 0; t < A.cols; ++t) {
            uint64_t v = A.at(i, t);
            if (!v) continue;
            for (unsigned j = 0; j < B.cols; ++j)
                C.at(i, j) = F.add(C.at(i, j), F.mul(v, B.at(t, j)));
        }
    return C;
}

unsigned eliminate(const Field& F, uint64_t* m, unsigned rows, unsigned cols) {
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned piv = rank;
        while (piv < rows && m[size_t(piv) * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (unsigned j = c; j < cols; ++j)
                std::swap(m[size_t(piv) * cols + j], m[size_t(rank) * cols + j]);
        uint64_t iv = F.inv(m[size_t(rank) * cols + c]);
        for (unsigned r2 = rank + 1; r2 < rows; ++r2) {
            uint64_t f = m[size_t(r2) * cols + c];
            if (!f) continue;
            uint64_t t = F.mul(f, iv);
            m[size_t(r2) * cols + c] = 0;
            for (unsigned j = c + 1; j < cols; ++j)
                m[size_t(r2) * cols + j] =
                    F.sub(m[size_t(r2) * cols + j], F.mul(t, m[size_t(rank) * cols + j]));
        }
        ++rank;
    }
    return rank;
}

unsigned mat_rank(const Matrix& M) {
    std::vector<uint64_t> buf(M.a);
    return eliminate(M.F, buf.data(), M.rows, M.cols);
}

std::pair<unsigned, uint64_t> mat_rank_det(const Matrix& M) {
    if (M.rows != M.cols) throw std::invalid_argument("determinant requested for non-square input");
    const Field& F = M.F;
    unsigned n = M.rows;
    std::vector<uint64_t> m(M.a);
    uint64_t det = 1;
    unsigned rank = 0;
    for (unsigned c = 0; c < n; ++c) {
        unsigned piv = rank;
        while (piv < n && m[size_t(piv) * n + c] == 0) ++piv;
        if (piv == n) {
            det = 0;
            continue;
        }
        if (piv != rank) {
            for (unsigned j = c; j < n; ++j) std::swap(m[size_t(piv) * n + j], m[size_t(rank) * n + j]);
            det = F.neg(det);
        }
        uint64_t pv = m[size_t(rank) * n + c];
        det = F.mul(det, pv);
        uint64_t iv = F.inv(pv);
        for (unsigned r2 = rank + 1; r2 < n; ++r2) {
            uint64_t f = m[size_t(r2) * n + c];
            if (!f) continue;
            uint64_t t = F.mul(f, iv);
            for (unsigned j = c; j < n; ++j)
                m[size_t(r2) * n + j] = F.sub(m[size_t(r2) * n + j], F.mul(t, m[size_t(rank) * n + j]));
        }
        ++rank;
    }
    if (rank < n) det = 0;
    return {rank, det};
}

uint64_t mat_det(const Matrix& M) { return mat_rank_det(M).second; }

namespace {

uint64_t minor_det(const Field& F, const Matrix& M, const std::vector<unsigned>& rows,
                   const std::vector<unsigned>& cols) {
    unsigned n = unsigned(rows.size());
    Matrix S(F, n, n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) S.at(i, j) = M.at(rows[i], cols[j]);
    return mat_det(S);
}

}  // namespace

uint64_t cauchy_binet_expand(const Matrix& A, const Matrix& B) {
    if (A.F != B.F) throw std::invalid_argument("cauchy_binet: field mismatch");
    unsigned r = A.rows, k = A.cols;
    if (B.rows != k || B.cols != r) throw std::invalid_argument("cauchy_binet: dimension mismatch");
    if (r > k) throw std::invalid_argument("cauchy_binet: requires r <= k");
    const Field& F = A.F;
    std::vector<unsigned> all(r), idx(r);
    for (unsigned i = 0; i < r; ++i) all[i] = idx[i] = i;
    uint64_t acc = 0;
    // iterate r-subsets of [k] in lexicographic order
    while (true) {
        uint64_t dA = minor_det(F, A, all, idx);
        if (dA != 0) {
            // det(B^I): rows of B indexed by I
            Matrix S(F, r, r);
            for (unsigned i = 0; i < r; ++i)
                for (unsigned j = 0; j < r; ++j) S.at(i, j) = B.at(idx[i], j);
            acc = F.add(acc, F.mul(dA, mat_det(S)));
        }
        // next subset
        int i = int(r) - 1;
        while (i >= 0 && idx[i] == k - r + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (unsigned j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    }
    return acc;
}

std::vector<unsigned> greedy_column_select(const Matrix& M) {
    unsigned r = M.rows, k = M.cols;
    if (mat_rank(M) != r) throw std::invalid_argument("greedy_column_select: rank-deficient input");
    const Field& F = M.F;
    // selected columns kept as an eliminated r x r basis
    std::vector<uint64_t> basis;  // row-major, grows by one column-vector row
    std::vector<unsigned> chosen;
    for (unsigned c = k; c-- > 0;) {
        // test whether column c is independent of the chosen ones
        std::vector<uint64_t> buf(basis);
        for (unsigned i = 0; i < r; ++i) buf.push_back(M.at(i, c));
        unsigned nrows = unsigned(buf.size() / r);
        if (eliminate(F, buf.data(), nrows, r) == nrows) {
            chosen.push_back(c);
            basis = std::move(buf);  // keep it eliminated to speed later tests
        }
        if (chosen.size() == r) break;
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
}

Matrix random_matrix(const Field& F, unsigned rows, unsigned cols, Rng& rng) {
    Matrix M(F, rows, cols);
    for (auto& v : M.a) v = rng.below(F.q());
    return M;
}

}  // namespace rankx

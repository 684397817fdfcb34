#include "rankx/subspace.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankx {

bigint gaussian_binomial(unsigned k, unsigned r, const bigint& q) {
    if (r > k) throw std::invalid_argument("gaussian_binomial: r > k");
    bigint num = 1, den = 1;
    for (unsigned j = 0; j < r; ++j) {
        num *= boost::multiprecision::pow(q, k - j) - 1;
        den *= boost::multiprecision::pow(q, j + 1) - 1;
    }
    return num / den;
}

std::vector<unsigned> rref_inplace(const Field& F, uint64_t* m, unsigned rows, unsigned cols) {
    std::vector<unsigned> pivots;
    unsigned rank = 0;
    for (unsigned c = 0; c < cols && rank < rows; ++c) {
        unsigned piv = rank;
        while (piv < rows && m[size_t(piv) * cols + c] == 0) ++piv;
        if (piv == rows) continue;
        if (piv != rank)
            for (unsigned j = 0; j < cols; ++j)
                std::swap(m[size_t(piv) * cols + j], m[size_t(rank) * cols + j]);
        uint64_t iv = F.inv(m[size_t(rank) * cols + c]);
        for (unsigned j = 0; j < cols; ++j)
            m[size_t(rank) * cols + j] = F.mul(m[size_t(rank) * cols + j], iv);
        for (unsigned r2 = 0; r2 < rows; ++r2) {
            if (r2 == rank) continue;
            uint64_t f = m[size_t(r2) * cols + c];
            if (!f) continue;
            for (unsigned j = 0; j < cols; ++j)
                m[size_t(r2) * cols + j] =
                    F.sub(m[size_t(r2) * cols + j], F.mul(f, m[size_t(rank) * cols + j]));
        }
        pivots.push_back(c);
        ++rank;
    }
    return pivots;
}

Subspace rowspan(const Matrix& rows) {
    std::vector<uint64_t> buf(rows.a);
    auto pivots = rref_inplace(rows.F, buf.data(), rows.rows, rows.cols);
    unsigned dim = unsigned(pivots.size());
    Subspace S;
    S.ambient = rows.cols;
    S.dim = dim;
    S.basis = Matrix(rows.F, dim, rows.cols);
    std::copy(buf.begin(), buf.begin() + size_t(dim) * rows.cols, S.basis.a.begin());
    return S;
}

Subspace zero_subspace(const Field& F, unsigned ambient) {
    Subspace S;
    S.ambient = ambient;
    S.dim = 0;
    S.basis = Matrix(F, 0, ambient);
    return S;
}

Subspace orthogonal_complement(const Subspace& V) {
    const Field& F = V.basis.F;
    unsigned k = V.ambient, d = V.dim;
    if (d == 0) {
        Subspace full;
        full.ambient = k;
        full.dim = k;
        full.basis = identity(F, k);
        return full;
    }
    // null space of the basis matrix under the standard inner product
    std::vector<uint64_t> buf(V.basis.a);
    auto pivots = rref_inplace(F, buf.data(), d, k);
    std::vector<bool> is_pivot(k, false);
    for (unsigned c : pivots) is_pivot[c] = true;
    Matrix out(F, k - d, k);
    unsigned row = 0;
    for (unsigned fc = 0; fc < k; ++fc) {
        if (is_pivot[fc]) continue;
        // basis vector: x_{fc} = 1, x_{pivot_i} = -buf[i][fc]
        out.at(row, fc) = 1;
        for (unsigned i = 0; i < pivots.size(); ++i)
            out.at(row, pivots[i]) = F.neg(buf[size_t(i) * k + fc]);
        ++row;
    }
    return rowspan(out);
}

bool intersects_nontrivially(const Subspace& V, const Subspace& W) {
    if (V.ambient != W.ambient) throw std::invalid_argument("intersects: ambient mismatch");
    if (V.dim == 0 || W.dim == 0) return false;
    const Field& F = V.basis.F;
    unsigned k = V.ambient;
    std::vector<uint64_t> buf;
    buf.reserve(size_t(V.dim + W.dim) * k);
    buf.insert(buf.end(), V.basis.a.begin(), V.basis.a.end());
    buf.insert(buf.end(), W.basis.a.begin(), W.basis.a.end());
    unsigned rk = eliminate(F, buf.data(), V.dim + W.dim, k);
    return rk < V.dim + W.dim;
}

SubspaceStream::SubspaceStream(Field F, unsigned k, unsigned r)
    : F_(std::move(F)), k_(k), r_(r) {
    if (r < 1 || r > k) throw std::invalid_argument("enumerate_subspaces: need 1 <= r <= k");
    build_blocks();
    reset();
}

void SubspaceStream::build_blocks() {
    // all r-subsets of rows [0, k) in lexicographic order
    std::vector<unsigned> piv(r_);
    for (unsigned i = 0; i < r_; ++i) piv[i] = i;
    bigint q = F_.q();
    while (true) {
        Block b;
        b.pivots = piv;
        std::vector<bool> is_pivot(k_, false);
        for (unsigned p : piv) is_pivot[p] = true;
        // transpose in RREF: entry M[row][j] free iff row > piv[j], row not a pivot
        for (unsigned j = 0; j < r_; ++j)
            for (unsigned row = piv[j] + 1; row < k_; ++row)
                if (!is_pivot[row]) b.free_pos.emplace_back(row, j);
        b.count = boost::multiprecision::pow(q, unsigned(b.free_pos.size()));
        total_ += b.count;
        blocks_.push_back(std::move(b));
        int i = int(r_) - 1;
        while (i >= 0 && piv[i] == k_ - r_ + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (unsigned j = i + 1; j < r_; ++j) piv[j] = piv[j - 1] + 1;
    }
}

uint64_t SubspaceStream::total_within(uint64_t budget) const {
    if (total_ > budget)
        throw budget_exceeded("enumerate_subspaces: budget exceeded", total_.str());
    return total_.convert_to<uint64_t>();
}

Matrix SubspaceStream::materialize(const Block& b, const std::vector<uint64_t>& digits) const {
    Matrix M(F_, k_, r_);
    for (unsigned j = 0; j < r_; ++j) M.at(b.pivots[j], j) = 1;
    for (size_t t = 0; t < b.free_pos.size(); ++t)
        M.at(b.free_pos[t].first, b.free_pos[t].second) = digits[t];
    return M;
}

bool SubspaceStream::next(Matrix& out) {
    if (done_) return false;
    const Block& b = blocks_[block_idx_];
    out = materialize(b, digits_);
    // increment the base-q counter, first position least significant
    uint64_t q = F_.q();
    size_t t = 0;
    for (; t < digits_.size(); ++t) {
        if (++digits_[t] < q) break;
        digits_[t] = 0;
    }
    if (t == digits_.size()) {
        ++block_idx_;
        if (block_idx_ >= blocks_.size()) {
            done_ = true;
        } else {
            digits_.assign(blocks_[block_idx_].free_pos.size(), 0);
        }
    }
    return true;
}

void SubspaceStream::seek(const bigint& index) {
    if (index >= total_) {
        done_ = true;
        return;
    }
    done_ = false;
    bigint rem = index;
    block_idx_ = 0;
    while (rem >= blocks_[block_idx_].count) {
        rem -= blocks_[block_idx_].count;
        ++block_idx_;
    }
    const Block& b = blocks_[block_idx_];
    digits_.assign(b.free_pos.size(), 0);
    bigint q = F_.q();
    for (size_t t = 0; t < digits_.size() && rem > 0; ++t) {
        digits_[t] = uint64_t(rem % q);
        rem /= q;
    }
}

Matrix SubspaceStream::sample(Rng& rng) const {
    // uniform index below total_, assembled 32 bits at a time
    unsigned bits = unsigned(boost::multiprecision::msb(total_)) + 1;
    bigint x;
    do {
        x = 0;
        for (unsigned got = 0; got < bits; got += 32) {
            x <<= 32;
            x |= uint64_t(rng.next() >> 32);
        }
        x >>= (32 - bits % 32) % 32;
    } while (x >= total_);
    // decode: walk blocks, then digits
    size_t bi = 0;
    while (x >= blocks_[bi].count) {
        x -= blocks_[bi].count;
        ++bi;
    }
    const Block& b = blocks_[bi];
    std::vector<uint64_t> digits(b.free_pos.size(), 0);
    bigint q = F_.q();
    for (size_t t = 0; t < digits.size() && x > 0; ++t) {
        digits[t] = uint64_t(x % q);
        x /= q;
    }
    return materialize(b, digits);
}

}  // namespace rankx

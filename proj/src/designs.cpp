#include "rankx/designs.hpp"

#include <stdexcept>

namespace rankx {

DesignPair family_to_designs(const MatrixFamily& fam) {
    DesignPair out;
    out.primal.ambient = out.dual.ambient = fam.k;
    out.primal.dim = fam.r;
    out.dual.dim = fam.k - fam.r;
    out.primal.source = out.dual.source = fam.meta.construction;
    out.primal.claimed_A = out.dual.claimed_A = fam.meta.theoretical_L;
    for (const Matrix& E : fam.mats) {
        Subspace V = rowspan(E);
        if (V.dim < fam.r) {
            ++out.dropped;
            continue;
        }
        Subspace C = orthogonal_complement(V);
        if (C.dim == 0) out.dual.degenerate = true;
        out.primal.members.push_back(std::move(V));
        out.dual.members.push_back(std::move(C));
    }
    if (out.primal.members.empty())
        throw std::invalid_argument("family_to_designs: all matrices rank-deficient");
    return out;
}

namespace {

// Members are reduced against the canonical RREF basis of W once per W; the
// residual rank decides nontrivial intersection without re-eliminating W.
struct MeetCounter {
    const SubspaceFamily& fam;
    unsigned k;
    std::vector<uint64_t> scratch;

    explicit MeetCounter(const SubspaceFamily& f) : fam(f), k(f.ambient) {}

    // W given as canonical k x t column-echelon matrix from the stream;
    // its transpose is an RREF row basis with pivot rows = pivot cols.
    uint64_t count(const Matrix& Wcols, std::vector<unsigned>& pivots) {
        unsigned t = Wcols.cols;
        const Field& F = Wcols.F;
        // the stream guarantees W^T is RREF, so the pivot row of column j is
        // its first nonzero row and carries a 1
        pivots.clear();
        for (unsigned j = 0; j < t; ++j)
            for (unsigned row = 0; row < k; ++row)
                if (Wcols.at(row, j) != 0) {
                    pivots.push_back(row);
                    break;
                }

        uint64_t meets = 0;
        for (const Subspace& V : fam.members) {
            unsigned d = V.dim;
            scratch.assign(V.basis.a.begin(), V.basis.a.end());
            // reduce each member row against W's rows (columns of Wcols)
            for (unsigned i = 0; i < d; ++i) {
                uint64_t* row = scratch.data() + size_t(i) * k;
                for (unsigned j = 0; j < t; ++j) {
                    uint64_t c = row[pivots[j]];
                    if (!c) continue;
                    for (unsigned col = 0; col < k; ++col)
                        row[col] = F.sub(row[col], F.mul(c, Wcols.at(col, j)));
                }
            }
            unsigned rk = eliminate(F, scratch.data(), d, k);
            if (rk < d) ++meets;  // dim(V cap W) = d - rk > 0
        }
        return meets;
    }
};

}  // namespace

DesignReport verify_weak_design(const SubspaceFamily& fam, unsigned t, const VerifyMode& mode,
                                uint64_t budget, unsigned threads) {
    if (fam.members.empty()) throw std::invalid_argument("verify_weak_design: empty family");
    const Field& F = fam.members.front().basis.F;
    DesignReport rep;
    rep.exhaustive = mode.exhaustive;
    if (mode.exhaustive) {
        SubspaceStream probe(F, fam.ambient, t);
        uint64_t total = probe.total_within(budget);
        rep.subspaces_checked = total;
        unsigned T = resolve_threads(threads);
        struct Part {
            uint64_t a_meas = 0;
            std::optional<Subspace> worst;
            uint64_t idx = UINT64_MAX;
        };
        std::vector<Part> parts(T);
        parallel_for(total, T, [&](unsigned w, uint64_t lo, uint64_t hi) {
            SubspaceStream st(F, fam.ambient, t);
            st.seek(lo);
            MeetCounter mc(fam);
            std::vector<unsigned> pivots;
            Matrix W;
            for (uint64_t idx = lo; idx < hi; ++idx) {
                st.next(W);
                uint64_t meets = mc.count(W, pivots);
                if (meets > parts[w].a_meas || !parts[w].worst) {
                    parts[w].a_meas = meets;
                    parts[w].worst = rowspan(transpose(W));
                    parts[w].idx = idx;
                }
            }
        });
        uint64_t best = UINT64_MAX;
        for (auto& pt : parts) {
            if (!pt.worst) continue;
            bool better = !rep.worst || pt.a_meas > rep.A_meas ||
                          (pt.a_meas == rep.A_meas && pt.idx < best);
            if (better) {
                rep.A_meas = pt.a_meas;
                rep.worst = pt.worst;
                best = pt.idx;
            }
        }
    } else {
        if (mode.sample_count == 0) throw std::invalid_argument("verify_weak_design: zero samples");
        SubspaceStream st(F, fam.ambient, t);
        Rng rng(mode.seed);
        MeetCounter mc(fam);
        std::vector<unsigned> pivots;
        rep.subspaces_checked = mode.sample_count;
        for (uint64_t s = 0; s < mode.sample_count; ++s) {
            Matrix W = st.sample(rng);
            uint64_t meets = mc.count(W, pivots);
            if (meets > rep.A_meas || !rep.worst) {
                rep.A_meas = meets;
                rep.worst = rowspan(transpose(W));
            }
        }
    }
    return rep;
}

bool duality_check(const SubspaceFamily& primal, const SubspaceFamily& dual, unsigned r,
                   uint64_t budget) {
    if (primal.members.size() != dual.members.size())
        throw std::invalid_argument("duality_check: mismatched families");
    if (primal.members.empty()) return true;
    const Field& F = primal.members.front().basis.F;
    unsigned k = primal.ambient;
    SubspaceStream st(F, k, r);
    st.total_within(budget);
    Matrix U;
    while (st.next(U)) {
        Subspace Us = rowspan(transpose(U));
        Subspace Uc = orthogonal_complement(Us);
        uint64_t dual_meets = 0, primal_meets = 0;
        for (const Subspace& V : dual.members)
            if (intersects_nontrivially(V, Us)) ++dual_meets;
        for (const Subspace& V : primal.members)
            if (intersects_nontrivially(V, Uc)) ++primal_meets;
        if (dual_meets != primal_meets) return false;
    }
    return true;
}

uint64_t strong_design_metric(const SubspaceFamily& fam, unsigned t, uint64_t budget) {
    if (fam.members.empty()) throw std::invalid_argument("strong_design_metric: empty family");
    const Field& F = fam.members.front().basis.F;
    SubspaceStream st(F, fam.ambient, t);
    st.total_within(budget);
    uint64_t best = 0;
    Matrix W;
    while (st.next(W)) {
        Subspace Ws = rowspan(transpose(W));
        uint64_t acc = 0;
        for (const Subspace& V : fam.members) {
            // dim(V cap W) = dim V + dim W - rank(stack)
            std::vector<uint64_t> buf;
            buf.insert(buf.end(), V.basis.a.begin(), V.basis.a.end());
            buf.insert(buf.end(), Ws.basis.a.begin(), Ws.basis.a.end());
            unsigned rk = eliminate(F, buf.data(), V.dim + Ws.dim, fam.ambient);
            acc += V.dim + Ws.dim - rk;
        }
        best = std::max(best, acc);
    }
    return best;
}

}  // namespace rankx

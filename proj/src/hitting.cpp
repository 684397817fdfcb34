#include "rankx/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rankx {

RankOneDet random_rank_one_det(const Field& F, unsigned r, unsigned N, uint64_t seed) {
    if (r < 1 || N < r) throw std::invalid_argument("rank_one_det: need 1 <= r <= N");
    RankOneDet A;
    A.F = F;
    A.r = r;
    A.N = N;
    Rng rng(seed);
    A.U = random_matrix(F, r, N, rng);
    A.V = random_matrix(F, r, N, rng);
    return A;
}

namespace {

uint64_t column_minor_det(const Matrix& M, const std::vector<unsigned>& cols) {
    unsigned r = M.rows;
    Matrix S(M.F, r, r);
    for (unsigned i = 0; i < r; ++i)
        for (unsigned j = 0; j < r; ++j) S.at(i, j) = M.at(i, cols[j]);
    return mat_det(S);
}

// iterate r-subsets of [0, N)
struct SubsetIter {
    unsigned N, r;
    std::vector<unsigned> idx;
    bool done = false;
    SubsetIter(unsigned n, unsigned k) : N(n), r(k), idx(k) {
        for (unsigned i = 0; i < k; ++i) idx[i] = i;
    }
    bool advance() {
        int i = int(r) - 1;
        while (i >= 0 && idx[i] == N - r + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (unsigned j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
        return true;
    }
};

uint64_t binom(unsigned n, unsigned k) {
    if (k > n) return 0;
    unsigned __int128 acc = 1;
    for (unsigned i = 0; i < k; ++i) {
        acc = acc * (n - i) / (i + 1);
        if (acc > UINT64_MAX) return UINT64_MAX;
    }
    return uint64_t(acc);
}

}  // namespace

std::vector<std::vector<unsigned>> supp(const RankOneDet& A, uint64_t budget) {
    if (binom(A.N, A.r) > budget)
        throw budget_exceeded("supp: C(N,r) exceeds budget", std::to_string(binom(A.N, A.r)));
    std::vector<std::vector<unsigned>> out;
    SubsetIter it(A.N, A.r);
    do {
        if (column_minor_det(A.U, it.idx) != 0 && column_minor_det(A.V, it.idx) != 0)
            out.push_back(it.idx);
    } while (it.advance());
    return out;
}

std::vector<uint64_t> UFamily::row(uint64_t a) const {
    std::vector<uint64_t> u(N);
    uint64_t acc = 1;
    for (unsigned i = 1; i <= N; ++i) {
        acc = uint64_t((unsigned __int128)acc * a % p);
        u[i - 1] = acc;
    }
    return u;
}

UFamily build_U(unsigned N, uint64_t s, double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("build_U: eps in (0,1)");
    long double bound = (long double)s * N / eps;
    if (bound > 1e18L) throw std::overflow_error("build_U: sN/eps out of range");
    uint64_t lo = uint64_t(std::ceil((double)bound));
    UFamily fam;
    fam.N = N;
    fam.p = next_prime_at_least(lo);
    return fam;
}

uint64_t circulation(const std::vector<uint64_t>& u, const std::vector<unsigned>& C) {
    if (C.empty() || C.size() % 2 != 0) throw std::invalid_argument("circulation: even-length cycle required");
    std::vector<unsigned> seen(C.begin(), C.end());
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("circulation: edges must be distinct");
    long long acc = 0;
    for (size_t i = 0; i < C.size(); ++i) {
        unsigned e = C[i];
        if (e < 1 || e > u.size()) throw std::invalid_argument("circulation: edge index out of range");
        long long v = (long long)u[e - 1];
        acc += (i % 2 == 0) ? -v : v;  // positions are 1-based in the alternating sum
    }
    return uint64_t(std::llabs(acc));
}

bigint HittingFamily::index_count() const {
    return boost::multiprecision::pow(bigint(p), t) * boost::multiprecision::pow(bigint(S_size), t);
}

uint64_t HittingFamily::S_element(uint64_t idx) const {
    if (idx >= S_size) throw std::invalid_argument("S_element: index out of range");
    return idx;  // first S_size elements in code order
}

HittingFamily make_hitting_family(const Field& F, unsigned N, double delta,
                                  std::optional<uint64_t> s_override,
                                  std::optional<uint64_t> S_size_override) {
    if (N < 1) throw std::invalid_argument("hitting family: N >= 1");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("hitting family: delta in (0,1)");
    HittingFamily fam;
    fam.F = F;
    fam.N = N;
    fam.t = N == 1 ? 1 : unsigned(std::ceil(std::log2((double)N)));
    fam.delta = delta;
    fam.eps = delta / (2.0 * fam.t);
    uint64_t s_full = 1;
    for (int i = 0; i < 4; ++i) s_full *= N;
    fam.s = s_override.value_or(s_full);
    UFamily U = build_U(N, fam.s, fam.eps);
    fam.p = U.p;
    long double S_req = 8.0L * std::pow((long double)N, 6) * fam.t * fam.t / ((long double)delta * delta);
    uint64_t S_need = S_size_override.value_or(uint64_t(std::ceil((double)S_req)));
    fam.S_size = std::min<uint64_t>(S_need, F.q());
    fam.reduced = fam.s < s_full || fam.S_size < uint64_t(std::ceil((double)S_req));
    return fam;
}

WeightTuple weight_of_index(const HittingFamily& fam, const std::vector<uint64_t>& T) {
    if (T.size() != fam.t) throw std::invalid_argument("weight_of_index: |T| != t");
    for (uint64_t a : T)
        if (a >= fam.p) throw std::invalid_argument("weight_of_index: index out of range");
    WeightTuple w;
    w.N = fam.N;
    w.t = fam.t;
    w.w.assign(size_t(fam.N) * fam.t, 0);
    for (unsigned j = 1; j <= fam.t; ++j) {
        uint64_t a = T[j - 1];
        uint64_t acc = 1;
        for (unsigned i = 1; i <= fam.N; ++i) {
            acc = uint64_t((unsigned __int128)acc * a % fam.p);
            w.w[size_t(i - 1) * fam.t + (j - 1)] = acc;
        }
    }
    return w;
}

namespace {

std::vector<uint64_t> weight_of_set(const WeightTuple& w, const std::vector<unsigned>& S) {
    std::vector<uint64_t> acc(w.t, 0);
    for (unsigned i : S)
        for (unsigned j = 0; j < w.t; ++j) acc[j] += w.w[size_t(i) * w.t + j];
    return acc;
}

}  // namespace

IsolationResult is_isolating(const WeightTuple& w, const RankOneDet& A, uint64_t budget) {
    if (w.N != A.N) throw std::invalid_argument("is_isolating: N mismatch");
    auto sets = supp(A, budget);
    IsolationResult out;
    if (sets.empty()) {
        out.status = IsolationStatus::empty_support;
        return out;
    }
    std::vector<uint64_t> best;
    for (const auto& S : sets) {
        auto ws = weight_of_set(w, S);
        if (out.argmax.empty() || ws > best) {
            best = ws;
            out.argmax.assign(1, S);
        } else if (ws == best) {
            out.argmax.push_back(S);
        }
    }
    out.status = out.argmax.size() == 1 ? IsolationStatus::isolating : IsolationStatus::not_isolating;
    return out;
}

NonzeroCheck isolation_implies_nonzero_check(const WeightTuple& w, const RankOneDet& A,
                                             uint64_t budget) {
    if (w.N != A.N) throw std::invalid_argument("nonzero_check: N mismatch");
    auto sets = supp(A, budget);
    if (sets.empty()) return NonzeroCheck::inconclusive;
    auto iso = is_isolating(w, A, budget);
    if (iso.status != IsolationStatus::isolating) return NonzeroCheck::inconclusive;
    // group c_S by the weight vector w(S); the top group certifies the claim
    std::map<std::vector<uint64_t>, uint64_t> groups;  // w(S) -> coefficient sum
    const Field& F = A.F;
    for (const auto& S : sets) {
        uint64_t c = F.mul(column_minor_det(A.U, S), column_minor_det(A.V, S));
        auto key = weight_of_set(w, S);
        auto it = groups.find(key);
        if (it == groups.end())
            groups[key] = c;
        else
            it->second = F.add(it->second, c);
    }
    uint64_t top_sum = groups.rbegin()->second;  // lexicographically largest key
    return top_sum != 0 ? NonzeroCheck::holds : NonzeroCheck::fails;
}

std::vector<uint64_t> hitting_point(const HittingFamily& fam, const std::vector<uint64_t>& T,
                                    const std::vector<uint64_t>& v) {
    if (v.size() != fam.t) throw std::invalid_argument("hitting_point: |v| != t");
    for (uint64_t x : v)
        if (x >= fam.F.q()) throw std::invalid_argument("hitting_point: v entry out of field");
    WeightTuple w = weight_of_index(fam, T);
    std::vector<uint64_t> a(fam.N);
    for (unsigned i = 1; i <= fam.N; ++i) {
        uint64_t acc = 1;
        for (unsigned j = 1; j <= fam.t; ++j) acc = fam.F.mul(acc, fam.F.pow(v[j - 1], w.at(i, j)));
        a[i - 1] = acc;
    }
    return a;
}

uint64_t eval_det_at(const RankOneDet& A, const std::vector<uint64_t>& a) {
    if (a.size() != A.N) throw std::invalid_argument("eval_det_at: point length != N");
    const Field& F = A.F;
    unsigned r = A.r;
    Matrix M(F, r, r);
    for (unsigned i = 0; i < A.N; ++i) {
        if (!a[i]) continue;
        for (unsigned x = 0; x < r; ++x) {
            uint64_t ui = F.mul(a[i], A.U.at(x, i));
            if (!ui) continue;
            for (unsigned y = 0; y < r; ++y)
                M.at(x, y) = F.add(M.at(x, y), F.mul(ui, A.V.at(y, i)));
        }
    }
    return mat_det(M);
}

HitEstimate estimate_hit_fraction(const RankOneDet& A, const HittingFamily& fam,
                                  uint64_t samples, uint64_t seed) {
    if (samples == 0) throw std::invalid_argument("estimate_hit_fraction: zero samples");
    if (fam.N != A.N) throw std::invalid_argument("estimate_hit_fraction: N mismatch");
    if (!(fam.F == A.F)) throw std::invalid_argument("estimate_hit_fraction: field mismatch");
    if (supp(A).empty()) throw std::invalid_argument("estimate_hit_fraction: det(A) is identically zero");
    Rng rng(seed);
    uint64_t hits = 0;
    std::vector<uint64_t> T(fam.t), v(fam.t);
    for (uint64_t sidx = 0; sidx < samples; ++sidx) {
        for (unsigned j = 0; j < fam.t; ++j) T[j] = rng.below(fam.p);
        for (unsigned j = 0; j < fam.t; ++j) v[j] = fam.S_element(rng.below(fam.S_size));
        auto a = hitting_point(fam, T, v);
        if (eval_det_at(A, a) != 0) ++hits;
    }
    HitEstimate est;
    est.samples = samples;
    est.fraction = double(hits) / double(samples);
    est.radius = 1.96 * std::sqrt(est.fraction * (1.0 - est.fraction) / double(samples));
    return est;
}

}  // namespace rankx

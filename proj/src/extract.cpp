#include "rankx/extract.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <stdexcept>

namespace rankx {

namespace {

FFDescriptor describe_ff(const FuncField& FF) {
    FFDescriptor d;
    d.kind = FF.kind() == FFKind::rational ? "rational" : "hermitian";
    d.q = FF.base().q();
    d.ell = FF.ell();
    return d;
}

}  // namespace

uint64_t gr_theoretical_L(unsigned r, unsigned k, unsigned g) {
    // r((r+1)(3k-r-2)/6 + 2g); the product r(r+1)(3k-r-2) is divisible by 6
    uint64_t prod = uint64_t(r) * (r + 1) * (3ull * k - r - 2);
    return prod / 6 + 2ull * g * r;
}

uint64_t fs_theoretical_L(unsigned r, unsigned k, unsigned g, uint64_t q) {
    uint64_t h = (k + q - 2) / (q - 1);  // ceil(k/(q-1))
    // r(k-r) + r(r-1)/2 h + r(r+1)/2 g, all terms integral
    return uint64_t(r) * (k - r) + (uint64_t(r) * (r - 1) / 2) * h +
           (uint64_t(r) * (r + 1) / 2) * g;
}

MatrixFamily build_gr(const FuncField& FF, unsigned r, unsigned k) {
    if (r < 1 || r > k) throw std::invalid_argument("build_gr: need 1 <= r <= k");
    const Field& F = FF.base();
    unsigned g = FF.genus();
    std::vector<FFElem> entries(size_t(r) * k);
    for (unsigned i = 1; i <= r; ++i)
        for (unsigned j = 1; j <= k; ++j)
            entries[size_t(i - 1) * k + (j - 1)] =
                FF.pole_order_function(uint64_t(i) * (j - 1) + 2ull * g);
    MatrixFamily fam;
    fam.F = F;
    fam.r = r;
    fam.k = k;
    fam.mats.reserve(FF.places().size());
    for (const Place& P : FF.places()) {
        Matrix E(F, r, k);
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < k; ++j) E.at(i, j) = FF.eval(entries[size_t(i) * k + j], P);
        fam.mats.push_back(std::move(E));
    }
    fam.meta.construction = "GR";
    fam.meta.source = describe_ff(FF);
    fam.meta.theoretical_L = gr_theoretical_L(r, k, g);
    return fam;
}

MatrixFamily build_fs(const FuncField& FF, unsigned r, unsigned k) {
    if (r < 1 || r > k) throw std::invalid_argument("build_fs: need 1 <= r <= k");
    const Field& F = FF.base();
    uint64_t q = F.q();
    if (q < 2) throw std::invalid_argument("build_fs: q >= 2 required");
    unsigned g = FF.genus();
    uint64_t h = (k + q - 2) / (q - 1);
    std::vector<FFElem> f = FF.pole_order_chain(k);
    std::vector<FFElem> gs = FF.pole_order_chain(unsigned(h));
    uint64_t gamma = F.primitive_element();

    std::vector<FFElem> entries(size_t(r) * k);
    for (unsigned j = 1; j <= k; ++j) {
        uint64_t alpha = (j - 1) / (q - 1);           // 0-based index into gs
        uint64_t beta = (j - 1) % (q - 1);
        FFElem base = FF.scale(F.pow(gamma, beta), gs[alpha]);
        FFElem pw = FF.constant(1);
        for (unsigned i = 1; i <= r; ++i) {
            entries[size_t(i - 1) * k + (j - 1)] = FF.mul(pw, f[j - 1]);
            if (i < r) pw = FF.mul(pw, base);
        }
    }
    MatrixFamily fam;
    fam.F = F;
    fam.r = r;
    fam.k = k;
    fam.mats.reserve(FF.places().size());
    for (const Place& P : FF.places()) {
        Matrix E(F, r, k);
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < k; ++j) E.at(i, j) = FF.eval(entries[size_t(i) * k + j], P);
        fam.mats.push_back(std::move(E));
    }
    fam.meta.construction = "FS";
    fam.meta.source = describe_ff(FF);
    fam.meta.theoretical_L = fs_theoretical_L(r, k, g, q);
    return fam;
}

namespace {

// bad count of one canonical M against every family member; returns the
// number of indices with rank(E_i M) < r, optionally early-exiting once a
// full-rank product is seen (for the disperser check)
struct Oracle {
    const MatrixFamily& fam;
    unsigned r, k;
    std::vector<uint64_t> prod;  // r x r scratch

    explicit Oracle(const MatrixFamily& f) : fam(f), r(f.r), k(f.k), prod(size_t(f.r) * f.r) {}

    bool product_full_rank(const Matrix& E, const Matrix& M) {
        const Field& F = fam.F;
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < r; ++j) {
                uint64_t acc = 0;
                for (unsigned t = 0; t < k; ++t) {
                    uint64_t e = E.at(i, t);
                    if (e) acc = F.add(acc, F.mul(e, M.at(t, j)));
                }
                prod[size_t(i) * r + j] = acc;
            }
        return eliminate(F, prod.data(), r, r) == r;
    }

    uint64_t bad_count(const Matrix& M) {
        uint64_t bad = 0;
        for (const Matrix& E : fam.mats)
            if (!product_full_rank(E, M)) ++bad;
        return bad;
    }

    bool some_full_rank(const Matrix& M) {
        for (const Matrix& E : fam.mats)
            if (product_full_rank(E, M)) return true;
        return false;
    }
};

}  // namespace

BadnessReport measure_badness(const MatrixFamily& fam, const VerifyMode& mode,
                              uint64_t budget, unsigned threads) {
    if (fam.mats.empty()) throw std::invalid_argument("measure_badness: empty family");
    BadnessReport rep;
    rep.histogram.assign(fam.n() + 1, 0);
    rep.exhaustive = mode.exhaustive;
    if (fam.meta.theoretical_L && fam.n() <= *fam.meta.theoretical_L) rep.vacuous_bound = true;

    if (mode.exhaustive) {
        SubspaceStream probe(fam.F, fam.k, fam.r);
        uint64_t total = probe.total_within(budget);
        rep.subspaces_checked = total;
        unsigned T = resolve_threads(threads);
        std::vector<BadnessReport> partial(T);
        std::vector<uint64_t> worst_index(T, UINT64_MAX);
        parallel_for(total, T, [&](unsigned w, uint64_t lo, uint64_t hi) {
            BadnessReport& pr = partial[w];
            pr.histogram.assign(fam.n() + 1, 0);
            SubspaceStream st(fam.F, fam.k, fam.r);
            st.seek(lo);
            Oracle oracle(fam);
            Matrix M;
            for (uint64_t idx = lo; idx < hi; ++idx) {
                st.next(M);
                uint64_t bad = oracle.bad_count(M);
                ++pr.histogram[bad];
                if (bad > pr.max_bad || !pr.worst_witness) {
                    pr.max_bad = bad;
                    pr.worst_witness = M;
                    worst_index[w] = idx;
                }
            }
        });
        uint64_t best_idx = UINT64_MAX;
        for (unsigned w = 0; w < T; ++w) {
            const BadnessReport& pr = partial[w];
            if (pr.histogram.size() == rep.histogram.size())
                for (size_t b = 0; b < rep.histogram.size(); ++b) rep.histogram[b] += pr.histogram[b];
            if (!pr.worst_witness) continue;
            bool better = !rep.worst_witness || pr.max_bad > rep.max_bad ||
                          (pr.max_bad == rep.max_bad && worst_index[w] < best_idx);
            if (better) {
                rep.max_bad = pr.max_bad;
                rep.worst_witness = pr.worst_witness;
                best_idx = worst_index[w];
            }
        }
    } else {
        if (mode.sample_count == 0) throw std::invalid_argument("measure_badness: zero samples");
        SubspaceStream st(fam.F, fam.k, fam.r);
        Rng rng(mode.seed);
        Oracle oracle(fam);
        rep.subspaces_checked = mode.sample_count;
        for (uint64_t s = 0; s < mode.sample_count; ++s) {
            Matrix M = st.sample(rng);
            uint64_t bad = oracle.bad_count(M);
            ++rep.histogram[bad];
            if (bad > rep.max_bad || !rep.worst_witness) {
                rep.max_bad = bad;
                rep.worst_witness = M;
            }
        }
    }
    return rep;
}

DisperserReport is_disperser(const MatrixFamily& fam, const VerifyMode& mode,
                             uint64_t budget, unsigned threads) {
    if (fam.mats.empty()) throw std::invalid_argument("is_disperser: empty family");
    DisperserReport rep;
    rep.exhaustive = mode.exhaustive;
    rep.holds = true;
    if (mode.exhaustive) {
        SubspaceStream probe(fam.F, fam.k, fam.r);
        uint64_t total = probe.total_within(budget);
        rep.subspaces_checked = total;
        unsigned T = resolve_threads(threads);
        std::vector<std::optional<Matrix>> cex(T);
        std::vector<uint64_t> cex_idx(T, UINT64_MAX);
        parallel_for(total, T, [&](unsigned w, uint64_t lo, uint64_t hi) {
            SubspaceStream st(fam.F, fam.k, fam.r);
            st.seek(lo);
            Oracle oracle(fam);
            Matrix M;
            for (uint64_t idx = lo; idx < hi; ++idx) {
                st.next(M);
                if (!oracle.some_full_rank(M)) {
                    cex[w] = M;
                    cex_idx[w] = idx;
                    return;
                }
            }
        });
        uint64_t best = UINT64_MAX;
        for (unsigned w = 0; w < T; ++w)
            if (cex[w] && cex_idx[w] < best) {
                best = cex_idx[w];
                rep.counterexample = cex[w];
                rep.holds = false;
            }
    } else {
        if (mode.sample_count == 0) throw std::invalid_argument("is_disperser: zero samples");
        SubspaceStream st(fam.F, fam.k, fam.r);
        Rng rng(mode.seed);
        Oracle oracle(fam);
        rep.subspaces_checked = mode.sample_count;
        for (uint64_t s = 0; s < mode.sample_count; ++s) {
            Matrix M = st.sample(rng);
            if (!oracle.some_full_rank(M)) {
                rep.counterexample = M;
                rep.holds = false;
                break;
            }
        }
    }
    return rep;
}

MatrixFamily random_family(const Field& F, unsigned r, unsigned k, unsigned n, uint64_t seed) {
    if (n == 0) throw std::invalid_argument("random_family: empty family invalid");
    if (r < 1 || r > k) throw std::invalid_argument("random_family: need 1 <= r <= k");
    MatrixFamily fam;
    fam.F = F;
    fam.r = r;
    fam.k = k;
    Rng rng(seed);
    for (unsigned i = 0; i < n; ++i) fam.mats.push_back(random_matrix(F, r, k, rng));
    fam.meta.construction = "Random";
    fam.meta.seed = seed;
    return fam;
}

bool existence_feasible(uint64_t q, unsigned r, unsigned k, uint64_t L, uint64_t n) {
    if (q < 2) throw std::invalid_argument("existence_feasible: q >= 2");
    if (L >= n) throw std::invalid_argument("existence_feasible: need 0 <= L < n");
    // r(k-r) ln q + 2/(q-1) + ln C(n, L+1) + (L+1) ln(1 - e^{-2/(q-1)}) < 0
    long double lnq = std::log((long double)q);
    long double t = 2.0L / (long double)(q - 1);
    long double one_minus = -std::expm1l(-t);  // 1 - e^{-t}, accurately
    long double lhs = (long double)r * (k - r) * lnq + t;
    lhs += std::lgammal((long double)n + 1) - std::lgammal((long double)L + 2) -
           std::lgammal((long double)(n - L));
    lhs += (long double)(L + 1) * std::logl(one_minus);
    return lhs < 0.0L;
}

double existence_C_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("C_delta: delta in (0,1)");
    double di = 1.0 / delta;
    return (di - 1.0) * std::log(di * std::exp(1.0) / (di - 1.0));
}

double delta_star(uint64_t q) {
    if (q < 2) throw std::invalid_argument("delta_star: q >= 2");
    long double t = 2.0L / (long double)(q - 1);
    long double target = -0.5L * std::logl(-std::expm1l(-t));
    // C_delta decreases in delta; bisect for the smallest delta with
    // C_delta <= target
    double lo = 1e-12, hi = 1.0 - 1e-12;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (existence_C_delta(mid) <= (double)target)
            hi = mid;
        else
            lo = mid;
        if (hi - lo < 1e-9) break;
    }
    return hi;
}

TowerParams tower_params(TowerKind kind, uint64_t q, unsigned i) {
    if (i < 1) throw std::invalid_argument("tower_params: i >= 1");
    TowerParams out;
    if (kind == TowerKind::GS) {
        uint64_t ell = uint64_t(std::llround(std::sqrt((double)q)));
        if (ell * ell != q) throw std::invalid_argument("tower_params: GS requires square q");
        bigint L = ell;
        out.extension_degree = boost::multiprecision::pow(L, i - 1);
        out.n_places_lower = boost::multiprecision::pow(L, i) * (L - 1) + 1;
        if (i % 2 == 0) {
            bigint h = boost::multiprecision::pow(L, i / 2) - 1;
            out.genus_num = h * h;
        } else {
            out.genus_num = (boost::multiprecision::pow(L, (i + 1) / 2) - 1) *
                            (boost::multiprecision::pow(L, (i - 1) / 2) - 1);
        }
        out.genus_den = 1;
        out.genus_exact = true;
        return out;
    }
    // BBGS: q = p^{2m+1}, m >= 1
    uint64_t p = prime_factors(q).size() == 1 ? prime_factors(q)[0] : 0;
    if (!p) throw std::invalid_argument("tower_params: q must be a prime power");
    unsigned e = 0;
    uint64_t t = q;
    while (t > 1) {
        t /= p;
        ++e;
    }
    if (e % 2 == 0 || e < 3) throw std::invalid_argument("tower_params: BBGS requires q = p^{2m+1}, m >= 1");
    unsigned m = (e - 1) / 2;
    bigint P = p;
    out.extension_degree = boost::multiprecision::pow(P, 2 * m * (i - 1));
    out.n_places_lower = out.extension_degree * (bigint(q) - 1);
    // g <= (deg/2)((q-1)/(p^m - 1) + (q-1)/(p^{m+1} - 1)), kept as a fraction
    bigint pm = boost::multiprecision::pow(P, m) - 1;
    bigint pm1 = boost::multiprecision::pow(P, m + 1) - 1;
    out.genus_num = out.extension_degree * (bigint(q) - 1) * (pm1 + pm);
    out.genus_den = 2 * pm * pm1;
    out.genus_exact = false;
    return out;
}

}  // namespace rankx

#include "rankx/fieldreduce.hpp"

#include <cmath>
#include <stdexcept>

namespace rankx {

Matrix coordinate_slice(const Matrix& E, const Tower& tower, const std::vector<unsigned>& sigma) {
    if (sigma.size() != E.rows) throw std::invalid_argument("coordinate_slice: |sigma| != r");
    Matrix out(tower.small(), E.rows, E.cols);
    for (unsigned i = 0; i < E.rows; ++i) {
        if (sigma[i] < 1 || sigma[i] > tower.degree())
            throw std::invalid_argument("coordinate_slice: sigma out of range");
        for (unsigned j = 0; j < E.cols; ++j)
            out.at(i, j) = tower.decompose(E.at(i, j))[sigma[i] - 1];
    }
    return out;
}

MatrixFamily reduce_multilinear(const MatrixFamily& fam, const Tower& tower) {
    if (!(fam.F == tower.big())) throw std::invalid_argument("reduce_multilinear: field mismatch");
    unsigned d = tower.degree(), r = fam.r;
    MatrixFamily out;
    out.F = tower.small();
    out.r = r;
    out.k = fam.k;
    // decompose each matrix entrywise once, then assemble the d^r slices
    for (const Matrix& E : fam.mats) {
        std::vector<std::vector<uint64_t>> coords(size_t(r) * fam.k);
        for (unsigned i = 0; i < r; ++i)
            for (unsigned j = 0; j < fam.k; ++j)
                coords[size_t(i) * fam.k + j] = tower.decompose(E.at(i, j));
        std::vector<unsigned> sigma(r, 1);
        while (true) {
            Matrix S(tower.small(), r, fam.k);
            for (unsigned i = 0; i < r; ++i)
                for (unsigned j = 0; j < fam.k; ++j)
                    S.at(i, j) = coords[size_t(i) * fam.k + j][sigma[i] - 1];
            out.mats.push_back(std::move(S));
            // lexicographic tuple order, last coordinate fastest
            int i = int(r) - 1;
            while (i >= 0 && sigma[i] == d) {
                sigma[i] = 1;
                --i;
            }
            if (i < 0) break;
            ++sigma[i];
        }
    }
    out.meta = fam.meta;
    out.meta.construction = "Reduced";
    out.meta.extra.emplace_back("reduced_from_q", std::to_string(fam.F.q()));
    out.meta.extra.emplace_back("tower_degree", std::to_string(d));
    // the multilinearity route preserves dispersers, not the extractor bound
    out.meta.theoretical_L.reset();
    return out;
}

std::vector<Matrix> rank1_program(const Matrix& E, const Tower& tower) {
    unsigned d = tower.degree(), r = E.rows, k = E.cols;
    std::vector<Matrix> out;
    out.reserve(size_t(r) * d);
    for (unsigned i = 1; i <= r; ++i) {
        std::vector<std::vector<uint64_t>> rows(k);
        for (unsigned j = 0; j < k; ++j) rows[j] = tower.decompose(E.at(i - 1, j));
        for (unsigned j = 1; j <= d; ++j) {
            Matrix A(tower.small(), r, k);
            for (unsigned c = 0; c < k; ++c) A.at(i - 1, c) = rows[c][j - 1];
            out.push_back(std::move(A));
        }
    }
    return out;
}

MatrixFamily pit_reduce_points(const MatrixFamily& fam, const Tower& tower,
                               const std::vector<std::vector<uint64_t>>& points) {
    unsigned d = tower.degree(), r = fam.r, k = fam.k;
    unsigned N = d * r;
    MatrixFamily out;
    out.F = tower.small();
    out.r = r;
    out.k = k;
    for (const Matrix& E : fam.mats) {
        auto prog = rank1_program(E, tower);
        for (const auto& a : points) {
            if (a.size() != N) throw std::invalid_argument("pit_reduce: point length != d*r");
            Matrix S(tower.small(), r, k);
            const Field& F = tower.small();
            for (unsigned idx = 0; idx < N; ++idx) {
                uint64_t c = a[idx];
                if (!c) continue;
                const Matrix& A = prog[idx];
                unsigned i = idx / d;  // only row i of A is nonzero
                for (unsigned col = 0; col < k; ++col)
                    S.at(i, col) = F.add(S.at(i, col), F.mul(c, A.at(i, col)));
            }
            out.mats.push_back(std::move(S));
        }
    }
    out.meta = fam.meta;
    out.meta.construction = "PIT";
    return out;
}

MatrixFamily pit_reduce(const MatrixFamily& fam, const Tower& tower, const HittingFamily& hit,
                        const PitPointMode& mode, uint64_t budget) {
    if (!(fam.F == tower.big())) throw std::invalid_argument("pit_reduce: field mismatch");
    unsigned d = tower.degree(), r = fam.r;
    if (hit.N != d * r) throw std::invalid_argument("pit_reduce: hitting family N != d*r");
    if (!(hit.F == tower.small())) throw std::invalid_argument("pit_reduce: hitting field mismatch");

    std::vector<std::vector<uint64_t>> points;
    if (mode.all) {
        bigint count = hit.index_count();
        if (count > budget)
            throw budget_exceeded("pit_reduce: hitting index space exceeds budget (pass a sample mode)",
                                  count.str());
        uint64_t total = count.convert_to<uint64_t>();
        std::vector<uint64_t> T(hit.t), v(hit.t);
        for (uint64_t idx = 0; idx < total; ++idx) {
            uint64_t rem = idx;
            for (unsigned j = 0; j < hit.t; ++j) {
                T[j] = rem % hit.p;
                rem /= hit.p;
            }
            for (unsigned j = 0; j < hit.t; ++j) {
                v[j] = hit.S_element(rem % hit.S_size);
                rem /= hit.S_size;
            }
            points.push_back(hitting_point(hit, T, v));
        }
    } else {
        if (mode.sample_count == 0) throw std::invalid_argument("pit_reduce: zero samples");
        Rng rng(mode.seed);
        std::vector<uint64_t> T(hit.t), v(hit.t);
        for (uint64_t s = 0; s < mode.sample_count; ++s) {
            for (unsigned j = 0; j < hit.t; ++j) T[j] = rng.below(hit.p);
            for (unsigned j = 0; j < hit.t; ++j) v[j] = hit.S_element(rng.below(hit.S_size));
            points.push_back(hitting_point(hit, T, v));
        }
    }
    MatrixFamily out = pit_reduce_points(fam, tower, points);
    out.meta.extra.emplace_back("hit_delta", std::to_string(hit.delta));
    out.meta.extra.emplace_back("hit_eps", std::to_string(hit.eps));
    out.meta.extra.emplace_back("hit_t", std::to_string(hit.t));
    out.meta.extra.emplace_back("hit_p", std::to_string(hit.p));
    out.meta.extra.emplace_back("hit_S_size", std::to_string(hit.S_size));
    out.meta.extra.emplace_back("hit_reduced", hit.reduced ? "true" : "false");
    out.meta.extra.emplace_back("points_used", std::to_string(points.size()));
    if (fam.meta.theoretical_L) {
        // Lemma 5.4 bound against the number of points actually used
        double L = double(*fam.meta.theoretical_L), n = double(fam.n());
        double Lp = (L + hit.delta * (n - L)) * double(points.size());
        out.meta.theoretical_L = uint64_t(std::ceil(Lp));
    }
    return out;
}

uint64_t default_theta(unsigned r) {
    uint64_t t = 2ull * r;
    return t * t * t * t;
}

namespace {

bool is_square(uint64_t n, uint64_t& root) {
    uint64_t s = uint64_t(std::llround(std::sqrt((double)n)));
    for (uint64_t c = s > 1 ? s - 1 : 0; c <= s + 1; ++c)
        if (c * c == n) {
            root = c;
            return true;
        }
    return false;
}

// Rational instance beats Hermitian whenever q^d > k (smaller genus); else a
// square q^d admits the Hermitian curve.
std::optional<FuncField> instance_over(const Field& FQ, unsigned k) {
    if (FQ.q() > k) return FuncField::rational(FQ);
    uint64_t root = 0;
    if (is_square(FQ.q(), root)) return FuncField::hermitian(FQ, root);
    return std::nullopt;
}

}  // namespace

MatrixFamily pipeline_small_field_disperser(const Field& Fq, unsigned r, unsigned k,
                                            std::optional<uint64_t> theta, PipelineTrace* trace) {
    uint64_t th = theta.value_or(default_theta(r));
    unsigned d_min = Fq.d() > 1 ? 1 : 2;  // d = 1 admissible for non-prime q
    std::vector<unsigned> tried;
    for (unsigned d = d_min; d <= 24; ++d) {
        unsigned __int128 Qv = 1;
        bool over = false;
        for (unsigned i = 0; i < d * Fq.d(); ++i) {
            Qv *= Fq.p();
            if (Qv > (unsigned __int128(1) << 62)) {
                over = true;
                break;
            }
        }
        if (over) break;
        if (uint64_t(Qv) < th) continue;
        tried.push_back(d);
        Field FQ = d == 1 ? Fq : Field::make(Fq.p(), Fq.d() * d);
        auto inst = instance_over(FQ, k);
        if (!inst) continue;  // next admissible d
        MatrixFamily fam = build_fs(*inst, r, k);
        uint64_t L = *fam.meta.theoretical_L;
        uint64_t keep = std::min<uint64_t>(fam.n(), L + 1);
        uint64_t n0 = fam.n();
        fam.mats.resize(keep);
        fam.meta.truncated_from = n0;
        MatrixFamily out;
        if (d == 1) {
            out = std::move(fam);
        } else {
            Tower tower(FQ, Fq);
            out = reduce_multilinear(fam, tower);
        }
        out.meta.extra.emplace_back("pipeline", "small_field_disperser");
        out.meta.extra.emplace_back("chosen_d", std::to_string(d));
        out.meta.extra.emplace_back("theta", std::to_string(th));
        if (trace) {
            trace->chosen_d = d;
            trace->instance = inst->describe();
            trace->theoretical_L = L;
            trace->kept = keep;
            trace->output_size = out.n();
        }
        return out;
    }
    std::string msg = "pipeline_small_field_disperser: no admissible instance; tried d =";
    for (unsigned d : tried) msg += " " + std::to_string(d);
    throw std::runtime_error(msg);
}

MatrixFamily pipeline_prime_field_extractor(const Field& Fq, unsigned r, unsigned k, double delta,
                                            const PitPointMode& points, PipelineTrace* trace) {
    if (Fq.d() != 1) throw std::invalid_argument("pipeline_prime_field_extractor: q must be prime");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("pipeline_prime_field_extractor: delta in (0,1) required");
    Field FQ = Field::make(Fq.p(), 2);  // Q = q^2
    auto inst = instance_over(FQ, k);
    if (!inst) throw std::logic_error("Q = q^2 is a square, an instance always exists");
    MatrixFamily fam = build_fs(*inst, r, k);
    uint64_t L0 = *fam.meta.theoretical_L;
    double delta_p = delta / 2.0;
    uint64_t n1 = uint64_t(std::ceil(double(L0) / delta_p));
    uint64_t n0 = fam.n();
    if (n1 < fam.n()) {
        fam.mats.resize(n1);
        fam.meta.truncated_from = n0;
    }
    Tower tower(FQ, Fq);
    HittingFamily hit = make_hitting_family(Fq, 2 * r, delta_p);
    MatrixFamily out = pit_reduce(fam, tower, hit, points);
    out.meta.extra.emplace_back("pipeline", "prime_field_extractor");
    out.meta.extra.emplace_back("target_ratio", std::to_string(delta));
    if (trace) {
        trace->chosen_d = 2;
        trace->instance = inst->describe();
        trace->theoretical_L = L0;
        trace->kept = fam.n();
        trace->output_size = out.n();
        trace->hit_delta = hit.delta;
        trace->hit_p = hit.p;
        trace->hit_S_size = hit.S_size;
        trace->target_ratio = delta;
    }
    return out;
}

}  // namespace rankx

#ifndef RANKX_HITTING_HPP
#define RANKX_HITTING_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "rankx/subspace.hpp"

namespace rankx {

// A(x) = sum_i x_i u_i v_i^T = U X V^T with X = diag(x); every summand has
// rank at most one by construction.
struct RankOneDet {
    Field F;
    unsigned r = 0, N = 0;
    Matrix U, V;  // r x N each; column i gives u_i, v_i
};

RankOneDet random_rank_one_det(const Field& F, unsigned r, unsigned N, uint64_t seed);

// Common bases of the two column matroids: {S : det(U_S) det(V_S) != 0}.
std::vector<std::vector<unsigned>> supp(const RankOneDet& A, uint64_t budget = kDefaultBudget);

// Claim B.8 vector family: u_a[i] = a^i mod p for i in [1..N], a in [0, p).
struct UFamily {
    uint64_t p = 0;
    unsigned N = 0;
    std::vector<uint64_t> row(uint64_t a) const;  // N entries, 1-based powers
};

UFamily build_U(unsigned N, uint64_t s, double eps);

// |sum (-1)^i u[e_i]| over an even-length sequence of distinct edge indices
// (1-based entries into u).
uint64_t circulation(const std::vector<uint64_t>& u, const std::vector<unsigned>& C);

struct WeightTuple {
    unsigned N = 0, t = 0;
    std::vector<uint64_t> w;  // w[(i-1)*t + j-1] = w_i[j]
    uint64_t at(unsigned i, unsigned j) const { return w[size_t(i - 1) * t + (j - 1)]; }
};

// Indexable hitting family for symbolic determinants with rank-one summands.
// Never materialized: points are reproduced from (descriptor, index).
struct HittingFamily {
    Field F;
    unsigned N = 0;
    unsigned t = 0;        // ceil(log2 N)
    double delta = 0;
    double eps = 0;        // delta / (2t)
    uint64_t s = 0;        // N^4 unless running in reduced-parameter mode
    uint64_t p = 0;        // smallest prime >= s*N/eps
    uint64_t S_size = 0;   // ceil(8 N^6 t^2 / delta^2) capped by |field|
    bool reduced = false;  // parameters weaker than the construction demands

    bigint index_count() const;  // p^t * S_size^t
    uint64_t S_element(uint64_t idx) const;  // idx-th element in code order
};

HittingFamily make_hitting_family(const Field& F, unsigned N, double delta,
                                  std::optional<uint64_t> s_override = std::nullopt,
                                  std::optional<uint64_t> S_size_override = std::nullopt);

WeightTuple weight_of_index(const HittingFamily& fam, const std::vector<uint64_t>& T);

enum class IsolationStatus { isolating, not_isolating, empty_support };

struct IsolationResult {
    IsolationStatus status = IsolationStatus::empty_support;
    std::vector<std::vector<unsigned>> argmax;  // the maximizing set(s)
};

IsolationResult is_isolating(const WeightTuple& w, const RankOneDet& A,
                             uint64_t budget = kDefaultBudget);

enum class NonzeroCheck { holds, fails, inconclusive };

// Groups the Cauchy-Binet coefficients by w(S) and tests the lexicographically
// top group for a nonzero coefficient sum, certifying det(A_w(y)) != 0 without
// expanding huge-exponent polynomials.
NonzeroCheck isolation_implies_nonzero_check(const WeightTuple& w, const RankOneDet& A,
                                             uint64_t budget = kDefaultBudget);

// a[i] = prod_j v_j^{w_i[j]} with w = weight_of_index(T).
std::vector<uint64_t> hitting_point(const HittingFamily& fam, const std::vector<uint64_t>& T,
                                    const std::vector<uint64_t>& v);

struct HitEstimate {
    double fraction = 0;
    double radius = 0;  // two-sided 95% binomial confidence radius
    uint64_t samples = 0;
};

HitEstimate estimate_hit_fraction(const RankOneDet& A, const HittingFamily& fam,
                                  uint64_t samples, uint64_t seed);

// det(A(a)) for a concrete point.
uint64_t eval_det_at(const RankOneDet& A, const std::vector<uint64_t>& a);

}  // namespace rankx

#endif

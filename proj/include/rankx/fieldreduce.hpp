#ifndef RANKX_FIELDREDUCE_HPP
#define RANKX_FIELDREDUCE_HPP

#include <optional>
#include <string>
#include <vector>

#include "rankx/extract.hpp"
#include "rankx/hitting.hpp"

namespace rankx {

// Multilinearity reduction: every family member E over F_Q expands into the
// d^r matrices E^{(sigma)} over F_q whose row i is the sigma_i-th coordinate
// row of E's row i. Dispersers are preserved.
MatrixFamily reduce_multilinear(const MatrixFamily& fam, const Tower& tower);

Matrix coordinate_slice(const Matrix& E, const Tower& tower, const std::vector<unsigned>& sigma);

// The rank-one summands A_{i,j}(E): row i holds the j-th coordinate row of
// E's row i, other rows zero. Returned in row-major (i, j) order, so index
// (i-1)*d + (j-1) matches the flattening used by pit_reduce.
std::vector<Matrix> rank1_program(const Matrix& E, const Tower& tower);

struct PitPointMode {
    bool all = false;          // enumerate the whole index space (within budget)
    uint64_t sample_count = 0;
    uint64_t seed = 0;
    static PitPointMode All() { return {true, 0, 0}; }
    static PitPointMode Sample(uint64_t count, uint64_t seed) { return {false, count, seed}; }
};

// E^*(a) = sum_{i,j} a_{i,j} A_{i,j}(E) for each family member and each
// hitting point; meta records the hitting parameters and the Lemma 5.4 bound
// L' = (L + delta(n-L)) h when the input carries a theoretical L.
MatrixFamily pit_reduce(const MatrixFamily& fam, const Tower& tower, const HittingFamily& hit,
                        const PitPointMode& mode, uint64_t budget = kDefaultBudget);

// As above with an explicit point list (used to cross-check against
// reduce_multilinear at indicator points).
MatrixFamily pit_reduce_points(const MatrixFamily& fam, const Tower& tower,
                               const std::vector<std::vector<uint64_t>>& points);

struct PipelineTrace {
    unsigned chosen_d = 0;
    std::string instance;
    uint64_t theoretical_L = 0;
    uint64_t kept = 0;             // family size after truncation
    uint64_t output_size = 0;
    std::optional<double> hit_delta;
    std::optional<uint64_t> hit_p;
    std::optional<uint64_t> hit_S_size;
    std::optional<double> target_ratio;  // L/n <= delta goal, prime pipeline
};

// Disperser over F_q for any prime power q: pick the smallest admissible
// extension with q^d >= theta(r), build FS there, keep the first
// theoretical_L + 1 matrices, and reduce by multilinearity.
MatrixFamily pipeline_small_field_disperser(const Field& Fq, unsigned r, unsigned k,
                                            std::optional<uint64_t> theta = std::nullopt,
                                            PipelineTrace* trace = nullptr);

// Extractor over a prime field: FS over F_{q^2}, truncate to ceil(L0/(delta/2))
// matrices, then PIT-reduce with a hitting family at N = 2r.
MatrixFamily pipeline_prime_field_extractor(const Field& Fq, unsigned r, unsigned k, double delta,
                                            const PitPointMode& points,
                                            PipelineTrace* trace = nullptr);

uint64_t default_theta(unsigned r);  // (2r)^4

}  // namespace rankx

#endif

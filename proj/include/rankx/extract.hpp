#ifndef RANKX_EXTRACT_HPP
#define RANKX_EXTRACT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rankx/funcfield.hpp"
#include "rankx/subspace.hpp"

namespace rankx {

struct FFDescriptor {
    std::string kind;  // "rational" | "hermitian"
    uint64_t q = 0;
    uint64_t ell = 0;
    bool operator==(const FFDescriptor& o) const {
        return kind == o.kind && q == o.q && ell == o.ell;
    }
};

struct FamilyMeta {
    std::string construction;  // GR | FS | Random | Reduced | PIT | Manual
    std::optional<FFDescriptor> source;
    std::optional<uint64_t> theoretical_L;
    std::optional<uint64_t> seed;
    std::optional<uint64_t> truncated_from;
    std::vector<std::pair<std::string, std::string>> extra;  // provenance notes
};

// The central artifact: a finite collection {E_i} of r x k matrices over F_q
// with construction metadata and the claimed bound L.
struct MatrixFamily {
    Field F;
    unsigned r = 0, k = 0;
    std::vector<Matrix> mats;
    FamilyMeta meta;

    size_t n() const { return mats.size(); }
};

// Section 3 evaluation matrices: entries of prescribed pole order
// d_ij = i*(j-1) + 2g, evaluated at every rational place.
MatrixFamily build_gr(const FuncField& FF, unsigned r, unsigned k);

// Section 4 evaluation matrices: E_ij = (gamma^{beta(j)} g_{alpha(j)})^{i-1} f_j
// from pole-order chains of lengths k and ceil(k/(q-1)).
MatrixFamily build_fs(const FuncField& FF, unsigned r, unsigned k);

uint64_t gr_theoretical_L(unsigned r, unsigned k, unsigned g);
uint64_t fs_theoretical_L(unsigned r, unsigned k, unsigned g, uint64_t q);

struct VerifyMode {
    bool exhaustive = true;
    uint64_t sample_count = 0;
    uint64_t seed = 0;
    static VerifyMode Exhaustive() { return {true, 0, 0}; }
    static VerifyMode Sample(uint64_t count, uint64_t seed) { return {false, count, seed}; }
};

struct BadnessReport {
    uint64_t max_bad = 0;                       // measured L
    std::vector<uint64_t> histogram;            // bad count -> #subspaces
    std::optional<Matrix> worst_witness;        // canonical k x r matrix
    uint64_t subspaces_checked = 0;
    bool exhaustive = true;
    bool vacuous_bound = false;  // set when n <= claimed theoretical_L
};

BadnessReport measure_badness(const MatrixFamily& fam, const VerifyMode& mode,
                              uint64_t budget = kDefaultBudget, unsigned threads = 0);

struct DisperserReport {
    bool holds = false;
    std::optional<Matrix> counterexample;
    uint64_t subspaces_checked = 0;
    bool exhaustive = true;
};

DisperserReport is_disperser(const MatrixFamily& fam, const VerifyMode& mode,
                             uint64_t budget = kDefaultBudget, unsigned threads = 0);

MatrixFamily random_family(const Field& F, unsigned r, unsigned k, unsigned n, uint64_t seed);

// Appendix existence inequality, log form: true when a random family of size n
// is a (k, r, L) extractor with positive probability.
bool existence_feasible(uint64_t q, unsigned r, unsigned k, uint64_t L, uint64_t n);

double existence_C_delta(double delta);
// smallest delta in (0,1) with C_delta <= -0.5 ln(1 - e^{-2/(q-1)}), to 1e-9
double delta_star(uint64_t q);

enum class TowerKind { GS, BBGS };

struct TowerParams {
    bigint extension_degree;
    bigint n_places_lower;
    bigint genus_num;  // genus (GS, exact) or an upper bound (BBGS), as a fraction
    bigint genus_den;
    bool genus_exact = false;
};

TowerParams tower_params(TowerKind kind, uint64_t q, unsigned i);

}  // namespace rankx

#endif

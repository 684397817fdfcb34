#ifndef RANKX_DESIGNS_HPP
#define RANKX_DESIGNS_HPP

#include <optional>
#include <string>
#include <vector>

#include "rankx/extract.hpp"

namespace rankx {

struct SubspaceFamily {
    unsigned ambient = 0;
    unsigned dim = 0;
    std::vector<Subspace> members;  // repeats preserved, counted with multiplicity
    std::string source;
    std::optional<uint64_t> claimed_A;
    bool degenerate = false;  // some member has dimension 0
};

struct DesignPair {
    SubspaceFamily primal;  // row spans, dimension r
    SubspaceFamily dual;    // orthogonal complements, dimension k - r
    uint64_t dropped = 0;   // rank-deficient matrices discarded
};

// Row spans and their complements of the full-rank members (Lemmas 2.3/2.4
// shape: dropping rank-deficient matrices first).
DesignPair family_to_designs(const MatrixFamily& fam);

struct DesignReport {
    uint64_t A_meas = 0;
    std::optional<Subspace> worst;  // a t-dimensional W attaining A_meas
    uint64_t subspaces_checked = 0;
    bool exhaustive = true;
};

// Max over t-dimensional W of the number of members meeting W nontrivially.
DesignReport verify_weak_design(const SubspaceFamily& fam, unsigned t, const VerifyMode& mode,
                                uint64_t budget = kDefaultBudget, unsigned threads = 0);

// For every U of dimension r: #dual members meeting U equals #primal members
// meeting U's complement.
bool duality_check(const SubspaceFamily& primal, const SubspaceFamily& dual, unsigned r,
                   uint64_t budget = kDefaultBudget);

// Optional strong-design metric: max over W of sum dim(V_i cap W).
uint64_t strong_design_metric(const SubspaceFamily& fam, unsigned t,
                              uint64_t budget = kDefaultBudget);

}  // namespace rankx

#endif

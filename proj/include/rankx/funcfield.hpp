#ifndef RANKX_FUNCFIELD_HPP
#define RANKX_FUNCFIELD_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rankx/field.hpp"

namespace rankx {

// Rational place identifier. Rational field: the point x = x_code.
// Hermitian field: the affine point (x, y) on y^ell + y = x^{ell+1}.
struct Place {
    uint64_t x = 0;
    uint64_t y = 0;
    bool operator==(const Place& o) const { return x == o.x && y == o.y; }
};

// Element of the coordinate ring, sparse in the monomial basis x^a y^b with
// y-degree < ell (Hermitian) or b = 0 throughout (rational). These are exactly
// the functions with poles only at P_infinity.
struct FFElem {
    std::map<std::pair<uint64_t, uint64_t>, uint64_t> terms;  // (a, b) -> nonzero coeff
    bool is_zero() const { return terms.empty(); }
    bool operator==(const FFElem& o) const { return terms == o.terms; }
};

enum class FFKind { rational, hermitian };

// A concrete function field exposing what the evaluation-matrix constructions
// need: genus, the rational places other than P_infinity, the valuation at
// P_infinity, evaluation, and functions of prescribed pole order.
class FuncField {
public:
    static FuncField rational(Field F);
    static FuncField hermitian(Field F, uint64_t ell);  // requires q = ell^2

    FFKind kind() const { return kind_; }
    const Field& base() const { return F_; }
    uint64_t ell() const { return ell_; }
    unsigned genus() const { return genus_; }
    const std::vector<Place>& places() const { return places_; }

    FFElem zero() const { return {}; }
    FFElem constant(uint64_t c) const;
    FFElem monomial(uint64_t a, uint64_t b, uint64_t coeff) const;

    FFElem add(const FFElem& f, const FFElem& g) const;
    FFElem mul(const FFElem& f, const FFElem& g) const;
    FFElem scale(uint64_t c, const FFElem& f) const;

    // v_{P_infinity}; nullopt encodes +infinity (the zero element)
    std::optional<int64_t> valuation(const FFElem& f) const;

    uint64_t eval(const FFElem& f, const Place& P) const;

    // single monomial with pole order exactly d; throws gap_order on gaps
    FFElem pole_order_function(uint64_t d) const;
    // monomials of the n smallest pole numbers, increasing pole order
    std::vector<FFElem> pole_order_chain(unsigned n) const;
    bool is_pole_number(uint64_t d) const;

    std::string describe() const;

private:
    FuncField() = default;
    void reduce(FFElem& f) const;  // rewrite y^ell = x^{ell+1} - y until b < ell

    FFKind kind_ = FFKind::rational;
    Field F_;
    uint64_t ell_ = 0;
    unsigned genus_ = 0;
    std::vector<Place> places_;
};

// Gaps of the numerical semigroup <ell, ell+1> up to 2g-1; their count equals
// the Hermitian genus ell(ell-1)/2.
std::vector<uint64_t> semigroup_gaps(uint64_t ell);

}  // namespace rankx

#endif

#ifndef RANKX_FIELD_HPP
#define RANKX_FIELD_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rankx/common.hpp"

namespace rankx {

bool is_prime_u64(uint64_t n);
uint64_t next_prime_at_least(uint64_t n);

// F_{p^d}. Elements are packed as base-p digit codes in [0, q): the code of
// c_0 + c_1 x + ... + c_{d-1} x^{d-1} is sum c_i p^i, where x is a root of
// the monic modulus. For d = 1 the code is just the residue mod p.
class Field {
public:
    // Modulus is the lexicographically smallest monic irreducible of degree d
    // (smallest value sum c_i p^i of the non-leading coefficients). For d = 1
    // this yields the polynomial x.
    static Field make(uint64_t p, unsigned d);
    // Coefficients low-to-high including the leading 1; must be irreducible.
    static Field with_modulus(uint64_t p, std::vector<uint64_t> modulus);

    uint64_t p() const { return p_; }
    unsigned d() const { return d_; }
    uint64_t q() const { return q_; }
    const std::vector<uint64_t>& modulus() const { return mod_; }

    uint64_t zero() const { return 0; }
    uint64_t one() const { return 1; }

    uint64_t add(uint64_t a, uint64_t b) const;
    uint64_t sub(uint64_t a, uint64_t b) const;
    uint64_t neg(uint64_t a) const;
    uint64_t mul(uint64_t a, uint64_t b) const;
    uint64_t inv(uint64_t a) const;  // throws std::domain_error on 0
    uint64_t pow(uint64_t a, uint64_t e) const;  // 0^0 = 1

    std::vector<uint64_t> coeffs(uint64_t a) const;  // d residues, low-to-high
    uint64_t from_coeffs(const std::vector<uint64_t>& c) const;

    // First element in code order with multiplicative order q-1.
    uint64_t primitive_element() const;

    // Multiplicative order of a nonzero element.
    uint64_t element_order(uint64_t a) const;

    bool operator==(const Field& o) const { return p_ == o.p_ && mod_ == o.mod_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

private:
    Field() = default;
    void init_tables();

    uint64_t p_ = 0, q_ = 0;
    unsigned d_ = 0;
    std::vector<uint64_t> mod_;
    // dense multiply/inverse tables for small extension fields
    std::shared_ptr<const std::vector<uint32_t>> mul_tab_;
    std::shared_ptr<const std::vector<uint32_t>> inv_tab_;
};

std::vector<uint64_t> prime_factors(uint64_t n);

// F_q inside F_Q (same characteristic, small.d | big.d). Basis defaults to
// powers of the canonical root of F_Q, so basis[0] = 1.
class Tower {
public:
    Tower(Field big, Field small);
    Tower(Field big, Field small, std::vector<uint64_t> basis);

    const Field& big() const { return big_; }
    const Field& small() const { return small_; }
    unsigned degree() const { return deg_; }
    const std::vector<uint64_t>& basis() const { return basis_; }

    uint64_t embed(uint64_t a_small) const;
    // coordinates of a over the basis, as small-field codes; exact round trip
    std::vector<uint64_t> decompose(uint64_t a_big) const;
    uint64_t compose(const std::vector<uint64_t>& coords) const;
    // inverse of embed when a_big lies in the subfield
    std::optional<uint64_t> project(uint64_t a_big) const;

private:
    void build_solver();

    Field big_, small_;
    unsigned deg_ = 0;
    uint64_t root_ = 0;  // image of the small field's canonical root
    std::vector<uint64_t> basis_;
    // inverse of the F_p-linear change of basis, row-major D x D residues
    std::vector<uint64_t> solve_;
    unsigned D_ = 0;
};

}  // namespace rankx

#endif

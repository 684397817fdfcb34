#include "rankx/funcfield.hpp"

#include <algorithm>
#include <stdexcept>

namespace rankx {

FuncField FuncField::rational(Field F) {
    FuncField ff;
    ff.kind_ = FFKind::rational;
    ff.genus_ = 0;
    ff.places_.reserve(F.q());
    for (uint64_t x = 0; x < F.q(); ++x) ff.places_.push_back({x, 0});
    ff.F_ = std::move(F);
    return ff;
}

FuncField FuncField::hermitian(Field F, uint64_t ell) {
    if (F.q() != ell * ell) throw std::invalid_argument("hermitian: q must equal ell^2");
    FuncField ff;
    ff.kind_ = FFKind::hermitian;
    ff.ell_ = ell;
    ff.genus_ = unsigned(ell * (ell - 1) / 2);
    // affine points of y^ell + y = x^{ell+1}, lexicographic in (x, y) codes
    for (uint64_t x = 0; x < F.q(); ++x) {
        uint64_t rhs = F.pow(x, ell + 1);
        for (uint64_t y = 0; y < F.q(); ++y) {
            if (F.add(F.pow(y, ell), y) == rhs) ff.places_.push_back({x, y});
        }
    }
    if (ff.places_.size() != ell * ell * ell)
        throw std::logic_error("hermitian: unexpected rational place count");
    ff.F_ = std::move(F);
    return ff;
}

FFElem FuncField::constant(uint64_t c) const {
    FFElem f;
    if (c) f.terms[{0, 0}] = c;
    return f;
}

FFElem FuncField::monomial(uint64_t a, uint64_t b, uint64_t coeff) const {
    if (kind_ == FFKind::rational && b != 0)
        throw std::invalid_argument("rational function field has no y");
    if (kind_ == FFKind::hermitian && b >= ell_)
        throw std::invalid_argument("monomial: y-degree must be < ell");
    FFElem f;
    if (coeff) f.terms[{a, b}] = coeff;
    return f;
}

FFElem FuncField::add(const FFElem& f, const FFElem& g) const {
    FFElem out = f;
    for (const auto& [k, c] : g.terms) {
        uint64_t s = F_.add(out.terms.count(k) ? out.terms[k] : 0, c);
        if (s)
            out.terms[k] = s;
        else
            out.terms.erase(k);
    }
    return out;
}

FFElem FuncField::scale(uint64_t c, const FFElem& f) const {
    FFElem out;
    if (!c) return out;
    for (const auto& [k, v] : f.terms) out.terms[k] = F_.mul(c, v);
    return out;
}

void FuncField::reduce(FFElem& f) const {
    if (kind_ == FFKind::rational) return;
    // y^ell = x^{ell+1} - y
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto it = f.terms.begin(); it != f.terms.end(); ++it) {
            auto [a, b] = it->first;
            if (b < ell_) continue;
            uint64_t c = it->second;
            f.terms.erase(it);
            // c x^a y^b = c x^{a+ell+1} y^{b-ell} - c x^a y^{b-ell+1}
            auto put = [&](uint64_t aa, uint64_t bb, uint64_t cc) {
                auto key = std::make_pair(aa, bb);
                uint64_t s = F_.add(f.terms.count(key) ? f.terms[key] : 0, cc);
                if (s)
                    f.terms[key] = s;
                else
                    f.terms.erase(key);
            };
            put(a + ell_ + 1, b - ell_, c);
            put(a, b - ell_ + 1, F_.neg(c));
            changed = true;
            break;
        }
    }
}

FFElem FuncField::mul(const FFElem& f, const FFElem& g) const {
    FFElem out;
    for (const auto& [kf, cf] : f.terms)
        for (const auto& [kg, cg] : g.terms) {
            auto key = std::make_pair(kf.first + kg.first, kf.second + kg.second);
            uint64_t s = F_.add(out.terms.count(key) ? out.terms[key] : 0, F_.mul(cf, cg));
            if (s)
                out.terms[key] = s;
            else
                out.terms.erase(key);
        }
    reduce(out);
    return out;
}

std::optional<int64_t> FuncField::valuation(const FFElem& f) const {
    if (f.is_zero()) return std::nullopt;  // +infinity
    int64_t worst = 0;
    for (const auto& [k, c] : f.terms) {
        int64_t order = kind_ == FFKind::rational
                            ? int64_t(k.first)
                            : int64_t(k.first * ell_ + k.second * (ell_ + 1));
        worst = std::max(worst, order);
    }
    return -worst;
}

uint64_t FuncField::eval(const FFElem& f, const Place& P) const {
    uint64_t acc = 0;
    for (const auto& [k, c] : f.terms) {
        uint64_t t = F_.mul(c, F_.pow(P.x, k.first));
        if (kind_ == FFKind::hermitian && k.second) t = F_.mul(t, F_.pow(P.y, k.second));
        acc = F_.add(acc, t);
    }
    return acc;
}

bool FuncField::is_pole_number(uint64_t d) const {
    if (kind_ == FFKind::rational) return true;
    uint64_t b = d % ell_;  // since ell+1 = 1 mod ell, b is determined
    return d >= b * (ell_ + 1);
}

FFElem FuncField::pole_order_function(uint64_t d) const {
    if (d == 0) return constant(1);
    if (kind_ == FFKind::rational) return monomial(d, 0, 1);
    uint64_t b = d % ell_;
    if (d < b * (ell_ + 1))
        throw gap_order("pole order " + std::to_string(d) + " is a Weierstrass gap");
    uint64_t a = (d - b * (ell_ + 1)) / ell_;
    return monomial(a, b, 1);
}

std::vector<FFElem> FuncField::pole_order_chain(unsigned n) const {
    std::vector<FFElem> out;
    out.reserve(n);
    for (uint64_t d = 0; out.size() < n; ++d)
        if (is_pole_number(d)) out.push_back(pole_order_function(d));
    return out;
}

std::string FuncField::describe() const {
    if (kind_ == FFKind::rational) return "rational(q=" + std::to_string(F_.q()) + ")";
    return "hermitian(ell=" + std::to_string(ell_) + ",q=" + std::to_string(F_.q()) + ")";
}

std::vector<uint64_t> semigroup_gaps(uint64_t ell) {
    if (ell < 2) throw std::invalid_argument("semigroup_gaps: ell >= 2");
    uint64_t g = ell * (ell - 1) / 2;
    std::vector<uint64_t> gaps;
    if (g == 0) return gaps;
    for (uint64_t d = 1; d + 1 <= 2 * g; ++d) {
        uint64_t b = d % ell;
        if (d < b * (ell + 1)) gaps.push_back(d);
    }
    return gaps;
}

}  // namespace rankx

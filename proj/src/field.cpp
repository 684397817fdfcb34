#include "rankx/field.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace rankx {

unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

void parallel_for(uint64_t total, unsigned threads,
                  const std::function<void(unsigned, uint64_t, uint64_t)>& body) {
    threads = resolve_threads(threads);
    if (threads <= 1 || total < 4096) {
        body(0, 0, total);
        return;
    }
    if (threads > total) threads = unsigned(total);
    std::vector<std::thread> pool;
    uint64_t chunk = total / threads, rem = total % threads;
    uint64_t begin = 0;
    for (unsigned w = 0; w < threads; ++w) {
        uint64_t end = begin + chunk + (w < rem ? 1 : 0);
        pool.emplace_back([&body, w, begin, end] { body(w, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
}

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    // deterministic Miller-Rabin for 64-bit
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    auto mulmod = [n](uint64_t a, uint64_t b) {
        return uint64_t((unsigned __int128)a * b % n);
    };
    auto powmod = [&](uint64_t a, uint64_t e) {
        uint64_t r = 1;
        a %= n;
        while (e) {
            if (e & 1) r = mulmod(r, a);
            a = mulmod(a, a);
            e >>= 1;
        }
        return r;
    };
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                       29ull, 31ull, 37ull}) {
        if (a % n == 0) continue;
        uint64_t x = powmod(a, d);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

uint64_t next_prime_at_least(uint64_t n) {
    if (n <= 2) return 2;
    if ((n & 1) == 0) ++n;
    while (!is_prime_u64(n)) n += 2;
    return n;
}

std::vector<uint64_t> prime_factors(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t f = 2; f * f <= n; f += (f == 2 ? 1 : 2)) {
        if (n % f == 0) {
            out.push_back(f);
            while (n % f == 0) n /= f;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

namespace {

constexpr uint64_t kTableMax = 1024;  // dense op tables up to this q

// polynomial helpers over F_p, dense low-to-high, used only at setup time
uint64_t peval(const std::vector<uint64_t>& f, uint64_t x, uint64_t p) {
    unsigned __int128 acc = 0;
    for (size_t i = f.size(); i-- > 0;) acc = (acc * x + f[i]) % p;
    return uint64_t(acc);
}

std::vector<uint64_t> pmod(std::vector<uint64_t> a, const std::vector<uint64_t>& b,
                           uint64_t p) {
    // b monic
    while (a.size() >= b.size()) {
        uint64_t c = a.back();
        if (c) {
            size_t off = a.size() - b.size();
            for (size_t i = 0; i < b.size(); ++i) {
                unsigned __int128 t = (unsigned __int128)c * b[i] % p;
                a[off + i] = (a[off + i] + p - uint64_t(t)) % p;
            }
        }
        a.pop_back();
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.size() < b.size()) break;
    }
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

bool divides(const std::vector<uint64_t>& g, const std::vector<uint64_t>& f,
             uint64_t p) {
    return pmod(f, g, p).empty();
}

bool irreducible(const std::vector<uint64_t>& f, uint64_t p) {
    unsigned d = unsigned(f.size()) - 1;
    if (d == 1) return true;
    // trial division by all monic polynomials of degree 1..d/2
    for (unsigned e = 1; 2 * e <= d; ++e) {
        unsigned __int128 count = 1;
        for (unsigned i = 0; i < e; ++i) {
            count *= p;
            if (count > 16777216) throw std::invalid_argument("field_make: irreducibility scan too large");
        }
        std::vector<uint64_t> g(e + 1, 0);
        g[e] = 1;
        for (uint64_t v = 0; v < uint64_t(count); ++v) {
            uint64_t t = v;
            for (unsigned i = 0; i < e; ++i) {
                g[i] = t % p;
                t /= p;
            }
            if (divides(g, f, p)) return false;
        }
    }
    return true;
}

}  // namespace

Field Field::make(uint64_t p, unsigned d) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field_make: p is not prime");
    if (d < 1) throw std::invalid_argument("field_make: d must be >= 1");
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= p;
        if (q > (unsigned __int128(1) << 63)) throw std::invalid_argument("field_make: p^d overflows 2^63");
    }
    std::vector<uint64_t> mod(d + 1, 0);
    mod[d] = 1;
    if (d == 1) return with_modulus(p, mod);  // the polynomial x
    for (uint64_t v = 0;; ++v) {
        if (v >= uint64_t(q)) throw std::logic_error("no irreducible modulus found");
        uint64_t t = v;
        for (unsigned i = 0; i < d; ++i) {
            mod[i] = t % p;
            t /= p;
        }
        if (irreducible(mod, p)) return with_modulus(p, mod);
    }
}

Field Field::with_modulus(uint64_t p, std::vector<uint64_t> modulus) {
    if (!is_prime_u64(p)) throw std::invalid_argument("field: p is not prime");
    if (modulus.size() < 2 || modulus.back() != 1)
        throw std::invalid_argument("field: modulus must be monic of degree >= 1");
    for (uint64_t c : modulus)
        if (c >= p) throw std::invalid_argument("field: modulus coefficient out of range");
    unsigned d = unsigned(modulus.size()) - 1;
    if (d > 1 && !irreducible(modulus, p))
        throw std::invalid_argument("field: modulus is reducible");
    Field F;
    F.p_ = p;
    F.d_ = d;
    F.mod_ = std::move(modulus);
    unsigned __int128 q = 1;
    for (unsigned i = 0; i < d; ++i) {
        q *= p;
        if (q > (unsigned __int128(1) << 63)) throw std::invalid_argument("field: p^d overflows 2^63");
    }
    F.q_ = uint64_t(q);
    F.init_tables();
    return F;
}

void Field::init_tables() {
    if (d_ == 1 || q_ > kTableMax) return;
    auto mt = std::make_shared<std::vector<uint32_t>>(q_ * q_);
    auto it = std::make_shared<std::vector<uint32_t>>(q_, 0);
    // temporarily run the generic path
    mul_tab_.reset();
    inv_tab_.reset();
    for (uint64_t a = 0; a < q_; ++a)
        for (uint64_t b = a; b < q_; ++b) {
            uint32_t v = uint32_t(mul(a, b));
            (*mt)[a * q_ + b] = v;
            (*mt)[b * q_ + a] = v;
        }
    for (uint64_t a = 1; a < q_; ++a) (*it)[a] = uint32_t(pow(a, q_ - 2));
    mul_tab_ = std::move(mt);
    inv_tab_ = std::move(it);
}

uint64_t Field::add(uint64_t a, uint64_t b) const {
    if (d_ == 1) {
        uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    uint64_t r = 0, m = 1;
    for (unsigned i = 0; i < d_; ++i) {
        uint64_t da = a % p_, db = b % p_;
        a /= p_;
        b /= p_;
        uint64_t s = da + db;
        if (s >= p_) s -= p_;
        r += s * m;
        m *= p_;
    }
    return r;
}

uint64_t Field::neg(uint64_t a) const {
    if (d_ == 1) return a ? p_ - a : 0;
    uint64_t r = 0, m = 1;
    for (unsigned i = 0; i < d_; ++i) {
        uint64_t da = a % p_;
        a /= p_;
        r += (da ? p_ - da : 0) * m;
        m *= p_;
    }
    return r;
}

uint64_t Field::sub(uint64_t a, uint64_t b) const { return add(a, neg(b)); }

uint64_t Field::mul(uint64_t a, uint64_t b) const {
    if (d_ == 1) return uint64_t((unsigned __int128)a * b % p_);
    if (mul_tab_) return (*mul_tab_)[a * q_ + b];
    uint64_t da[64], db[64];
    unsigned __int128 prod[127] = {0};
    for (unsigned i = 0; i < d_; ++i) {
        da[i] = a % p_;
        a /= p_;
        db[i] = b % p_;
        b /= p_;
    }
    for (unsigned i = 0; i < d_; ++i) {
        if (!da[i]) continue;
        for (unsigned j = 0; j < d_; ++j) prod[i + j] += (unsigned __int128)da[i] * db[j];
    }
    uint64_t red[127];
    for (unsigned i = 0; i < 2 * d_ - 1; ++i) red[i] = uint64_t(prod[i] % p_);
    for (unsigned i = 2 * d_ - 2; i >= d_; --i) {
        uint64_t c = red[i];
        if (c) {
            for (unsigned j = 0; j < d_; ++j) {
                unsigned __int128 t = (unsigned __int128)c * mod_[j] % p_;
                red[i - d_ + j] = (red[i - d_ + j] + p_ - uint64_t(t)) % p_;
            }
        }
        if (i == d_) break;
    }
    uint64_t r = 0, m = 1;
    for (unsigned i = 0; i < d_; ++i) {
        r += red[i] * m;
        m *= p_;
    }
    return r;
}

uint64_t Field::pow(uint64_t a, uint64_t e) const {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

uint64_t Field::inv(uint64_t a) const {
    if (a == 0) throw std::domain_error("field: inversion of zero");
    if (inv_tab_) return (*inv_tab_)[a];
    return pow(a, q_ - 2);
}

std::vector<uint64_t> Field::coeffs(uint64_t a) const {
    std::vector<uint64_t> c(d_);
    for (unsigned i = 0; i < d_; ++i) {
        c[i] = a % p_;
        a /= p_;
    }
    return c;
}

uint64_t Field::from_coeffs(const std::vector<uint64_t>& c) const {
    if (c.size() != d_) throw std::invalid_argument("field: coefficient length != d");
    uint64_t r = 0, m = 1;
    for (unsigned i = 0; i < d_; ++i) {
        if (c[i] >= p_) throw std::invalid_argument("field: coefficient out of range");
        r += c[i] * m;
        m *= p_;
    }
    return r;
}

uint64_t Field::element_order(uint64_t a) const {
    if (a == 0) throw std::domain_error("element_order of zero");
    uint64_t ord = q_ - 1;
    for (uint64_t f : prime_factors(q_ - 1)) {
        while (ord % f == 0 && pow(a, ord / f) == 1) ord /= f;
    }
    return ord;
}

uint64_t Field::primitive_element() const {
    if (q_ == 2) return 1;
    auto fs = prime_factors(q_ - 1);
    for (uint64_t a = 1; a < q_; ++a) {
        bool gen = true;
        for (uint64_t f : fs) {
            if (pow(a, (q_ - 1) / f) == 1) {
                gen = false;
                break;
            }
        }
        if (gen) return a;
    }
    throw std::logic_error("no generator found");
}

Tower::Tower(Field big, Field small) : big_(std::move(big)), small_(std::move(small)) {
    if (big_.p() != small_.p()) throw std::invalid_argument("tower: mixed characteristic");
    if (big_.d() % small_.d() != 0) throw std::invalid_argument("tower: small.d does not divide big.d");
    deg_ = big_.d() / small_.d();
    uint64_t x = big_.d() > 1 ? big_.p() : 0;  // canonical root of the big field
    basis_.resize(deg_);
    uint64_t e = 1;
    for (unsigned t = 0; t < deg_; ++t) {
        basis_[t] = e;
        e = big_.mul(e, x);
    }
    build_solver();
}

Tower::Tower(Field big, Field small, std::vector<uint64_t> basis)
    : big_(std::move(big)), small_(std::move(small)), basis_(std::move(basis)) {
    if (big_.p() != small_.p()) throw std::invalid_argument("tower: mixed characteristic");
    if (big_.d() % small_.d() != 0) throw std::invalid_argument("tower: small.d does not divide big.d");
    deg_ = big_.d() / small_.d();
    if (basis_.size() != deg_) throw std::invalid_argument("tower: basis size != degree");
    build_solver();
}

void Tower::build_solver() {
    uint64_t p = big_.p();
    // image of the small field's canonical root: first root of its modulus
    if (small_.d() == 1) {
        root_ = 1;
    } else {
        root_ = 0;
        bool found = false;
        for (uint64_t z = 0; z < big_.q(); ++z) {
            unsigned __int128 acc = 0;
            uint64_t val = 0;
            // evaluate the small modulus at z inside the big field
            uint64_t zp = 1;
            (void)acc;
            for (size_t i = 0; i < small_.modulus().size(); ++i) {
                uint64_t c = small_.modulus()[i] % p;  // prime-field coefficient
                val = big_.add(val, big_.mul(c, zp));
                zp = big_.mul(zp, z);
            }
            if (val == 0) {
                root_ = z;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("tower: no embedding root found");
    }

    D_ = big_.d();
    unsigned d0 = small_.d();
    // columns indexed by (t, s): digits of basis[t] * root^s
    std::vector<uint64_t> B(D_ * D_);
    for (unsigned t = 0; t < deg_; ++t) {
        uint64_t rs = 1;
        for (unsigned s = 0; s < d0; ++s) {
            uint64_t v = big_.mul(basis_[t], rs);
            auto digits = big_.coeffs(v);
            unsigned col = t * d0 + s;
            for (unsigned row = 0; row < D_; ++row) B[row * D_ + col] = digits[row];
            rs = big_.mul(rs, root_);
        }
    }
    // invert B over F_p
    std::vector<uint64_t> A(B), I(D_ * D_, 0);
    for (unsigned i = 0; i < D_; ++i) I[i * D_ + i] = 1;
    auto mulp = [p](uint64_t a, uint64_t b) { return uint64_t((unsigned __int128)a * b % p); };
    auto invp = [&](uint64_t a) {
        uint64_t r = 1, e = p - 2;
        while (e) {
            if (e & 1) r = mulp(r, a);
            a = mulp(a, a);
            e >>= 1;
        }
        return r;
    };
    for (unsigned c = 0; c < D_; ++c) {
        unsigned piv = c;
        while (piv < D_ && A[piv * D_ + c] == 0) ++piv;
        if (piv == D_) throw std::invalid_argument("tower: dependent basis");
        if (piv != c) {
            for (unsigned j = 0; j < D_; ++j) {
                std::swap(A[piv * D_ + j], A[c * D_ + j]);
                std::swap(I[piv * D_ + j], I[c * D_ + j]);
            }
        }
        uint64_t iv = invp(A[c * D_ + c]);
        for (unsigned j = 0; j < D_; ++j) {
            A[c * D_ + j] = mulp(A[c * D_ + j], iv);
            I[c * D_ + j] = mulp(I[c * D_ + j], iv);
        }
        for (unsigned r2 = 0; r2 < D_; ++r2) {
            if (r2 == c) continue;
            uint64_t f = A[r2 * D_ + c];
            if (!f) continue;
            for (unsigned j = 0; j < D_; ++j) {
                A[r2 * D_ + j] = (A[r2 * D_ + j] + p - mulp(f, A[c * D_ + j]) % p) % p;
                I[r2 * D_ + j] = (I[r2 * D_ + j] + p - mulp(f, I[c * D_ + j]) % p) % p;
            }
        }
    }
    solve_ = std::move(I);
}

uint64_t Tower::embed(uint64_t a_small) const {
    auto digits = small_.coeffs(a_small);
    uint64_t acc = 0, rs = 1;
    for (unsigned s = 0; s < small_.d(); ++s) {
        acc = big_.add(acc, big_.mul(digits[s] % big_.p(), rs));
        rs = big_.mul(rs, root_);
    }
    return acc;
}

std::vector<uint64_t> Tower::decompose(uint64_t a_big) const {
    uint64_t p = big_.p();
    auto digits = big_.coeffs(a_big);
    unsigned d0 = small_.d();
    std::vector<uint64_t> coords(deg_, 0);
    for (unsigned row = 0; row < D_; ++row) {
        unsigned __int128 acc = 0;
        for (unsigned col = 0; col < D_; ++col)
            acc += (unsigned __int128)solve_[row * D_ + col] * digits[col];
        uint64_t c = uint64_t(acc % p);
        unsigned t = row / d0, s = row % d0;
        // assemble the small-field code digit by digit
        uint64_t m = 1;
        for (unsigned i = 0; i < s; ++i) m *= p;
        coords[t] += c * m;
    }
    return coords;
}

uint64_t Tower::compose(const std::vector<uint64_t>& coords) const {
    if (coords.size() != deg_) throw std::invalid_argument("tower: coords size != degree");
    uint64_t acc = 0;
    for (unsigned t = 0; t < deg_; ++t)
        acc = big_.add(acc, big_.mul(embed(coords[t]), basis_[t]));
    return acc;
}

std::optional<uint64_t> Tower::project(uint64_t a_big) const {
    auto coords = decompose(a_big);
    for (unsigned t = 1; t < deg_; ++t)
        if (coords[t] != 0) return std::nullopt;
    return coords[0];
}

}  // namespace rankx

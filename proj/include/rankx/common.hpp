#ifndef RANKX_COMMON_HPP
#define RANKX_COMMON_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace rankx {

// Thrown when an exhaustive enumeration would exceed the configured budget.
// Carries the would-be count so callers can decide to fall back to sampling.
class budget_exceeded : public std::runtime_error {
public:
    budget_exceeded(const std::string& what, std::string count)
        : std::runtime_error(what), count_(std::move(count)) {}
    const std::string& count() const { return count_; }

private:
    std::string count_;
};

// Requested pole order is a Weierstrass gap of the function field.
class gap_order : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr uint64_t kDefaultBudget = 100000000ull;  // 10^8 subspaces

// splitmix64: deterministic across platforms, unlike std distributions.
class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed) {}

    uint64_t next() {
        uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, n), rejection sampled
    uint64_t below(uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        uint64_t v;
        do {
            v = next();
        } while (v >= lim);
        return v % n;
    }

    double unit() { return double(next() >> 11) * 0x1.0p-53; }

private:
    uint64_t s_;
};

unsigned resolve_threads(unsigned requested);

// Splits [0, total) into contiguous chunks, one per worker thread.
// body(worker_index, begin, end) must only touch worker-local state.
void parallel_for(uint64_t total, unsigned threads,
                  const std::function<void(unsigned, uint64_t, uint64_t)>& body);

}  // namespace rankx

#endif

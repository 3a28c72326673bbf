#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ekron {

// Error taxonomy mirrors the CLI exit codes: usage (64), data/overflow (65),
// internal invariant violation (70).
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class usage_error : public error {
public:
    using error::error;
};

class data_error : public error {
public:
    using error::error;
};

class internal_error : public error {
public:
    using error::error;
};

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r))
        throw data_error(std::string("64-bit overflow in ") + what);
    return r;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r))
        throw data_error(std::string("64-bit overflow in ") + what);
    return r;
}

// p^k with overflow detection; throws data_error instead of wrapping.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp, const char* what) {
    std::uint64_t r = 1;
    while (exp) {
        if (exp & 1) r = checked_mul(r, base, what);
        exp >>= 1;
        if (exp) base = checked_mul(base, base, what);
    }
    return r;
}

// base^exp when it is <= bound, 0 otherwise; never wraps.
inline std::uint64_t pow_within(std::uint64_t base, unsigned exp, std::uint64_t bound) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (r > bound / base) return 0;
        r *= base;
    }
    return r <= bound ? r : 0;
}

}  // namespace ekron

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace latca {

using i64 = std::int64_t;
using Sym = std::int32_t;

// Raised when an enumeration would exceed its configured budget. Distinct
// from a "no" answer: callers map it to an inconclusive outcome.
struct budget_error : std::runtime_error {
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr i64 kEnumBudget = 1'000'000;        // points enumerated explicitly
constexpr i64 kSubsetVertexBudget = 20;       // de Bruijn vertices for the powerset route
constexpr i64 kPairEdgeBudget = 30'000'000;   // materialized pair-graph edges
constexpr i64 kCoordBound = 1'000'000'000;    // |coordinate| bound for lattice points

inline i64 checked_add(i64 a, i64 b) {
    i64 r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in add");
    return r;
}

inline i64 checked_sub(i64 a, i64 b) {
    i64 r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in sub");
    return r;
}

inline i64 checked_mul(i64 a, i64 b) {
    i64 r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in mul");
    return r;
}

// floor division / non-negative remainder, defined for b != 0
inline i64 floor_div(i64 a, i64 b) {
    i64 q = a / b, r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) --q;
    return q;
}

inline i64 pos_mod(i64 a, i64 b) {
    i64 r = a % b;
    if (r < 0) r += (b < 0 ? -b : b);
    return r;
}

// a^k with overflow checking; also used for table sizes against budgets
inline i64 checked_pow(i64 a, i64 k) {
    i64 r = 1;
    for (i64 i = 0; i < k; ++i) r = checked_mul(r, a);
    return r;
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace latca

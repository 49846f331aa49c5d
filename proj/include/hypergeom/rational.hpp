#pragma once

#include <gmpxx.h>

#include <string>

#include "errors.hpp"

namespace hypergeom {

// Exact arbitrary-precision rational scalar.  GMP keeps values canonical
// (reduced, positive denominator) after arithmetic.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    if (den == 0) throw DataError("rational with zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// q^e for integer e; e < 0 inverts and therefore rejects q == 0.
inline Rat rat_pow(const Rat& q, long e) {
    if (e == 0) return Rat(1);
    if (q == 0 && e < 0) throw DataError("zero raised to a negative power");
    Rat base = e > 0 ? q : Rat(1 / q);
    unsigned long k = static_cast<unsigned long>(e > 0 ? e : -e);
    Rat acc(1);
    while (k) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

inline Rat rat_factorial(long n) {
    Rat acc(1);
    for (long i = 2; i <= n; ++i) acc *= i;
    return acc;
}

// binomial(e, k) for arbitrary integer e (falling factorial over k!).
inline Rat rat_binomial(long e, long k) {
    Rat acc(1);
    for (long i = 0; i < k; ++i) acc *= Rat(e - i);
    return acc / rat_factorial(k);
}

// "3/2", "-1", "4": integer part alone when the denominator is one.
inline std::string rat_string(const Rat& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace hypergeom

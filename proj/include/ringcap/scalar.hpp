#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <type_traits>

namespace ringcap {

using Rational = mpq_class;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

// Scalar construction and conversion that works for double, long double and
// Rational alike.
template <class T>
T make_scalar(std::int64_t num, std::int64_t den = 1) {
    if constexpr (is_rational_v<T>) {
        static_assert(sizeof(long) == sizeof(std::int64_t));
        Rational r{mpz_class{static_cast<long>(num)}, mpz_class{static_cast<long>(den)}};
        r.canonicalize();
        return r;
    } else {
        return static_cast<T>(num) / static_cast<T>(den);
    }
}

template <class T>
double to_double(const T& x) {
    if constexpr (is_rational_v<T>) {
        return x.get_d();
    } else {
        return static_cast<double>(x);
    }
}

// Exact conversion of a finite double into the target scalar.
template <class T>
T from_double(double x) {
    if constexpr (is_rational_v<T>) {
        return Rational{x};
    } else {
        return static_cast<T>(x);
    }
}

template <class T>
bool is_zero(const T& x) {
    if constexpr (is_rational_v<T>) {
        return sgn(x) == 0;
    } else {
        return x == T{0};
    }
}

}  // namespace ringcap

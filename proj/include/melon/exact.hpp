#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace melon {

/// Arbitrary precision integer used for every exact count.
using BigInt = boost::multiprecision::cpp_int;
/// Exact rational used by the finite-N expectation oracles.
using Rational = boost::multiprecision::cpp_rational;

BigInt binomial(unsigned n, unsigned k);
BigInt factorial(unsigned n);

inline Rational power(const Rational& base, unsigned e) {
    Rational r = 1;
    for (unsigned i = 0; i < e; ++i) r *= base;
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const BigInt& z) { return z.convert_to<double>(); }

}  // namespace melon

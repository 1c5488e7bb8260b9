#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace linfty {

/// Exact rational scalar used for every coefficient in the library.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "n", "-n" or "n/d". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" form; integers are written without a denominator.
std::string format_rational(const Rational& q);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

/// base^exp for exp >= 0, with 0^0 == 1.
Integer ipow(const Integer& base, unsigned long exp);

inline int minus_one_pow(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace linfty

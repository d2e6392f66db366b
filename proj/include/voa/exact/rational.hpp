#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace voa {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "n", "-n", "n/d" with optional surrounding blanks.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

// Generalised binomial coefficient; n may be negative.
Integer binomial(long n, unsigned long k);

// n (n-1) ... (n-k+1)
Integer falling_factorial(long n, unsigned long k);

Integer factorial(unsigned long n);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline int sign(const Rational& q) { return sgn(q); }

}  // namespace voa

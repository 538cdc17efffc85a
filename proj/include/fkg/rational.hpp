#ifndef FKG_RATIONAL_HPP_
#define FKG_RATIONAL_HPP_

#include <gmpxx.h>

#include <optional>
#include <string>

namespace fkg {

// All lattice values, measure weights, polynomial coefficients and report
// payloads are exact rationals; comparisons are zero-tolerance everywhere.
using Rational = mpq_class;
using Integer = mpz_class;

// Parses "p/q" or a bare integer "p". Returns nullopt on malformed input
// (bad digits, empty fields, zero denominator) so callers can attach the
// position of the offending value.
std::optional<Rational> parse_rational(const std::string& text);

// Canonical rendering in lowest terms; a denominator of 1 prints as "p".
std::string to_string(const Rational& r);
std::string to_string(const Integer& z);

Rational pow_rational(const Rational& base, unsigned long exp);
Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);

}  // namespace fkg

#endif  // FKG_RATIONAL_HPP_

#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace vmp {

using Rational = mpq_class;

// Largest denominator used when irrational constants enter exact code.
const mpz_class& default_max_denominator();

// Best rational approximation of x with denominator <= max_den
// (continued fractions plus the final semiconvergent). Finite x only.
Rational rationalize(double x, const mpz_class& max_den = default_max_denominator());

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double x) { return x; }

// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational& r);

// Accepts "p/q", integers and plain decimals ("-0.125", "3e-2").
Rational parse_rational(std::string_view text);

}  // namespace vmp

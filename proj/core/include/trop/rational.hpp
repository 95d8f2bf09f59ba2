#ifndef TROP_RATIONAL_HPP
#define TROP_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace trop {

using BigInt = boost::multiprecision::cpp_int;

/// Arbitrary-precision rational, always canonical: lowest terms, positive
/// denominator. cpp_rational maintains both invariants on every operation.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return numerator(r); }
inline BigInt rat_den(const Rational& r) { return denominator(r); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Formats as "p" or "p/q".
std::string format_rational(const Rational& r);

/// Parses "p" or "p/q" (optional sign, arbitrary precision). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

}  // namespace trop

#endif

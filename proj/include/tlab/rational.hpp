#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>

namespace tlab {

using Rational = boost::multiprecision::mpq_rational;

/// Exact conversion: every finite double is a dyadic rational.
inline Rational to_rational(double v) { return Rational(v); }

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

inline int sign(const Rational& q) { return q.sign(); }

/// "p/q", or "p" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.str(); }

}  // namespace tlab

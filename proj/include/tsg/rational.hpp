#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsg {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Index = std::int64_t;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

// Exact conversion; every finite double is a dyadic rational.
Rational rational_from_double(double x);

// Accepts "3", "-5/4" and decimal strings like "0.25" (exact).
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

inline Rational rabs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// |q|^p for integer p >= 1.
Rational rational_pow(const Rational& q, unsigned p);

}  // namespace tsg

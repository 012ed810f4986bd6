#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace wanderflow {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", an integer literal, or a plain decimal literal ("0.25").
Rational parse_rational(const std::string& text);

// Canonical form: "p/q", or just "p" when the denominator is 1.
std::string format_rational(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace wanderflow

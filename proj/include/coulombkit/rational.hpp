#pragma once

// Exact arbitrary-precision rational arithmetic. Everything downstream
// (polynomials, series, structure constants) is built on this type; no
// floating point appears anywhere in the library.

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace ck {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt gcd_int(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm_int(const BigInt& a, const BigInt& b) {
    return boost::multiprecision::lcm(a, b);
}

// "p/q" with the "/q" omitted for integers; used verbatim by the canonical
// printers, so the format is part of the golden-file contract.
inline std::string to_string(const Rational& r) { return r.str(); }

inline int sign(const Rational& r) { return r.sign(); }

}  // namespace ck

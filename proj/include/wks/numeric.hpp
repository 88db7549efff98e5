#pragma once

// Exact arithmetic used throughout: costs, harmonic numbers and the
// ratio / adversary constant recurrences are all exact.

#include "wks/errors.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace wks {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& i) { return i.convert_to<double>(); }

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

namespace detail {

// Base-10 integer with optional sign. Boost would read a leading 0 as octal.
inline BigInt parse_decimal_integer(const std::string& text, const std::string& whole) {
    std::size_t i = 0;
    const bool negative = !text.empty() && (text[0] == '-' || text[0] == '+') ? text[i++] == '-' : false;
    if (i == text.size()) throw InvalidArgument("not a number: '" + whole + "'");
    BigInt v = 0;
    for (; i < text.size(); ++i) {
        if (text[i] < '0' || text[i] > '9') throw InvalidArgument("not a number: '" + whole + "'");
        v = v * 10 + (text[i] - '0');
    }
    return negative ? BigInt(-v) : v;
}

}  // namespace detail

/// Parses "3", "-2", "7/4" or a plain decimal such as "2.5".
inline Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const BigInt den = detail::parse_decimal_integer(text.substr(slash + 1), text);
        if (den == 0) throw InvalidArgument("zero denominator: '" + text + "'");
        return Rational(detail::parse_decimal_integer(text.substr(0, slash), text), den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(detail::parse_decimal_integer(text, text));
    const std::string frac = text.substr(dot + 1);
    if (frac.empty() || frac[0] == '-' || frac[0] == '+') throw InvalidArgument("not a number: '" + text + "'");
    BigInt den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    const std::string head = text.substr(0, dot);
    const BigInt mag = detail::parse_decimal_integer((head.empty() || head == "-" || head == "+" ? head + "0" : head) + frac, text);
    return Rational(mag, den);
}

}  // namespace wks

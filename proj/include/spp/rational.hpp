#pragma once

/*
 * Exact arithmetic support.  The combinatorial layers (Schur functions,
 * process weights) are templated on the scalar; instantiating them with
 * `rational` gives exact answers for rational specialization values, which is
 * what the equality tests and the brute-force cross-checks run on.
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace spp {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

inline double to_double(const rational& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

namespace detail {

inline double abs_val(double x) { return std::fabs(x); }
inline rational abs_val(const rational& x) { return x < 0 ? rational(-x) : x; }

/* base^e for integer e >= 0 by binary exponentiation. */
template <class R>
R pow_int(R base, long long e) {
    R result(1);
    while (e > 0) {
        if (e & 1) result *= base;
        base *= base;
        e >>= 1;
    }
    return result;
}

/* 2^e for possibly negative e. */
template <class R>
R pow2_signed(int e) {
    if (e >= 0) return pow_int(R(2), e);
    return R(1) / pow_int(R(2), -static_cast<long long>(e));
}

}  // namespace detail

/*
 * Parse an exact rational from "p/q", an integer, or a plain decimal such as
 * "0.125" (no exponent form).  Throws std::invalid_argument on anything else.
 */
inline rational parse_rational(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("parse_rational: empty string");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (num.empty() || den.empty())
            throw std::invalid_argument("parse_rational: malformed fraction '" + text + "'");
        return rational{bigint(num), bigint(den)};
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return rational(bigint(text));
    std::string head = text.substr(0, dot), tail = text.substr(dot + 1);
    if (tail.find_first_not_of("0123456789") != std::string::npos || tail.empty())
        throw std::invalid_argument("parse_rational: malformed decimal '" + text + "'");
    bool negative = !head.empty() && head[0] == '-';
    if (head.empty() || head == "-" || head == "+") head += "0";
    rational integer_part{bigint(head)};
    rational frac(bigint(tail), detail::pow_int(bigint(10), static_cast<long long>(tail.size())));
    return negative ? rational(integer_part - frac) : rational(integer_part + frac);
}

}  // namespace spp

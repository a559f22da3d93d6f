#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mahler {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/// Raised when a value is outside an operation's mathematical domain
/// (zero polynomial, vanishing substitution, zero row where none allowed).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by the polynomial/matrix text parsers; carries a 0-based position.
struct parse_error : std::runtime_error {
    std::size_t position;
    parse_error(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
};

inline std::int64_t to_int64_checked(const bigint& v, const char* what = "value") {
    if (v < std::numeric_limits<std::int64_t>::min() || v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error(std::string(what) + " exceeds 64-bit range");
    return static_cast<std::int64_t>(v);
}

inline bigint gcd(const bigint& a, const bigint& b) {
    return boost::multiprecision::gcd(a, b);
}

inline std::int64_t gcd64(std::int64_t a, std::int64_t b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

} // namespace mahler

#ifndef REALAC_RATIONAL_HPP
#define REALAC_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace realac {

// Exact rational value. All semantics in this library (term evaluation,
// circuit evaluation, sign tests) are exact; no floating point anywhere.
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) {
    if (r > 0) return 1;
    if (r < 0) return -1;
    return 0;
}

// sign'(x) = sign(sign(x) + 1): 1 for x >= 0, 0 for x < 0.
inline int sign_prime_of(const Rational& r) { return r >= 0 ? 1 : 0; }

inline bool is_integer(const Rational& r) { return denominator(r) == 1; }

// Literal syntax: "-"? digits ("/" digits)?. Stricter than what
// cpp_rational's own string constructor accepts (no whitespace, no
// zero denominator, no signs inside the denominator).
inline Rational parse_rational(const std::string& text) {
    std::size_t pos = 0;
    if (pos < text.size() && text[pos] == '-') ++pos;
    std::size_t digits_begin = pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == digits_begin)
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    if (pos == text.size())
        return Rational(text);
    if (text[pos] != '/')
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    std::size_t denom_begin = ++pos;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') ++pos;
    if (pos == denom_begin || pos != text.size())
        throw std::invalid_argument("malformed rational literal: '" + text + "'");
    std::string denom = text.substr(denom_begin);
    if (denom.find_first_not_of('0') == std::string::npos)
        throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    return Rational(text);
}

// Canonical form "p/q" (q > 0, gcd-reduced) or "p" when q is 1.
inline std::string to_string(const Rational& r) { return r.str(); }

}  // namespace realac

#endif

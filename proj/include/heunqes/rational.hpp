#ifndef HEUNQES_RATIONAL_HPP
#define HEUNQES_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace heunqes {

/// Arbitrary-precision rational scalar used by the exact arithmetic backend.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline int sign_of(const Rational& r) { return r.sign(); }
inline int sign_of(double x) { return (x > 0.0) - (x < 0.0); }

/// Parses "p/q", plain integers and decimal literals ("-3", "0.25", "10/3")
/// into an exact rational. Returns std::nullopt on malformed input.
inline std::optional<Rational> try_parse_rational(const std::string& text)
{
    if (text.empty()) return std::nullopt;
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const BigInt num(text.substr(0, slash));
            const BigInt den(text.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rational(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) return Rational(BigInt(text));
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        BigInt num(digits);
        BigInt den(1);
        for (std::size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return Rational(num, den);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

inline Rational parse_rational(const std::string& text)
{
    auto r = try_parse_rational(text);
    if (!r) throw std::invalid_argument("not a rational literal: '" + text + "'");
    return *r;
}

inline std::string to_string(const Rational& r)
{
    if (denominator(r) == 1) return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

} // namespace heunqes

#endif // HEUNQES_RATIONAL_HPP

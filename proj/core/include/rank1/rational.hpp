// Exact rational scalar used for weight and Casimir arithmetic.
#pragma once

#include <boost/rational.hpp>

#include <stdexcept>
#include <string>

namespace rank1 {
namespace repn {

using Rat = boost::rational<long long>;

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

/// True for half-odd integers like 1/2, -3/2 (denominator exactly 2).
inline bool is_half_odd(const Rat& r) { return r.denominator() == 2; }

inline double to_double(const Rat& r) {
    return static_cast<double>(r.numerator()) /
           static_cast<double>(r.denominator());
}

inline std::string to_string(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1)
        s += "/" + std::to_string(r.denominator());
    return s;
}

/// Parse "3", "-2", "3/2", "-7/2".
inline Rat rat_parse(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(std::stoll(text));
        const long long num = std::stoll(text.substr(0, slash));
        const long long den = std::stoll(text.substr(slash + 1));
        if (den == 0)
            throw std::invalid_argument("zero denominator");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("rat_parse: cannot parse '" + text + "'");
    }
}

}  // namespace repn
}  // namespace rank1

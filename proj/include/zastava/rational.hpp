// Exact rational scalars. GMP-backed: values are always canonical
// (lowest terms, positive denominator), arithmetic never rounds.
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace zastava {

using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("rational is not an integer: " + r.get_str());
    if (!r.get_num().fits_slong_p()) throw std::domain_error("integer out of range");
    return r.get_num().get_si();
}

// Serialized form used in every file format: "p/q", or just "p" when q = 1.
inline std::string rational_to_string(const Rational& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            Integer num(s);
            return Rational(num);
        }
        Integer num(s.substr(0, slash));
        Integer den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        Rational r(num, den);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument("malformed rational literal '" + s + "'");
    }
}

} // namespace zastava

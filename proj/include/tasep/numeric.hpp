#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace tasep {

// Exact arithmetic used everywhere outside the Monte Carlo code.
using Natural = mpz_class;
using Integer = mpz_class;  // signed quantities such as mass derivatives
using Rational = mpq_class;

inline Natural binomial(unsigned long n, unsigned long k)
{
    Natural r;
    if (k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string fraction_string(const Rational& q)
{
    return q.get_str();
}

inline Rational parse_fraction(const std::string& text)
{
    Rational q(text);  // throws std::invalid_argument on malformed text
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("fraction with zero denominator: " + text);
    q.canonicalize();
    return q;
}

} // namespace tasep

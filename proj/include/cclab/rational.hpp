#pragma once

#include <gmpxx.h>

#include <string>

namespace cclab {

// Exact rational scalar used by the whole symbolic layer.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

// "p" for integers, "p/q" otherwise
inline std::string rat_str(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    Rational q(s);
    q.canonicalize();
    return q;
}

inline double rat_double(const Rational& q) { return q.get_d(); }

}  // namespace cclab

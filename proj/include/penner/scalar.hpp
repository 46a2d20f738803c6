#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <string>

#include "penner/errors.hpp"

namespace penner {

/// Exact rational scalar: the reference arithmetic for all chart operations.
/// Degeneracy and validity predicates are decided literally in this mode.
using Rational = boost::multiprecision::cpp_rational;

/// Comparison tolerance used by floating-point zero-tests. Rational mode
/// ignores it entirely.
inline constexpr double kDefaultTolerance = 1e-9;

template <class S>
inline int sign_of(const S& x) {
    return (x > 0) - (x < 0);
}

inline int sign_of(const Rational& x) { return x.sign(); }

template <class S>
inline S abs_of(const S& x) {
    return x < 0 ? S(-x) : x;
}

/// Zero-test against a magnitude reference. Exact mode compares literally;
/// float mode treats |value| <= tol * scale as zero.
inline bool negligible(const Rational& value, const Rational& /*scale*/, double /*tol*/) {
    return value == 0;
}

inline bool negligible(double value, double scale, double tol) {
    return std::fabs(value) <= tol * scale;
}

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static const char* mode_name() { return "rational"; }
    static std::string to_string(const Rational& x) { return x.str(); }
    static Rational from_string(const std::string& text) {
        try {
            return Rational(text);
        } catch (const std::exception&) {
            throw IoError("not a rational scalar: '" + text + "'");
        }
    }
    static double to_double(const Rational& x) { return x.template convert_to<double>(); }
};

template <>
struct ScalarTraits<double> {
    static constexpr bool exact = false;
    static const char* mode_name() { return "float"; }
    static std::string to_string(double x) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }
    static double from_string(const std::string& text) {
        std::size_t pos = 0;
        double v = 0;
        try {
            v = std::stod(text, &pos);
        } catch (const std::exception&) {
            throw IoError("not a float scalar: '" + text + "'");
        }
        if (pos != text.size()) {
            // Accept exact "p/q" strings in float mode by dividing through.
            if (text[pos] == '/') {
                return v / from_string(text.substr(pos + 1));
            }
            throw IoError("not a float scalar: '" + text + "'");
        }
        return v;
    }
    static double to_double(double x) { return x; }
};

} // namespace penner

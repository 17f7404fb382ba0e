#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace linerec {

/// Exact rational scalar. All positions, distances and offsets are held in
/// this type; arithmetic never rounds. boost::multiprecision::cpp_rational
/// keeps values in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

inline Integer rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational rat_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Renders "num/den", or just "num" when den == 1.
inline std::string rat_to_string(const Rational& r) {
    Integer n = rat_num(r), d = rat_den(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

/// Parses "num" or "num/den". Throws std::invalid_argument on malformed
/// input or a zero denominator.
inline Rational rat_parse(const std::string& text) {
    auto integer_literal = [](const std::string& s) {
        std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (i == s.size()) return false;
        for (; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    auto bad = [&] { return std::invalid_argument("bad rational literal '" + text + "'"); };
    auto slash = text.find('/');
    if (slash == std::string::npos) {
        if (!integer_literal(text)) throw bad();
        return Rational(Integer(text));
    }
    std::string num_part = text.substr(0, slash), den_part = text.substr(slash + 1);
    if (!integer_literal(num_part) || !integer_literal(den_part)) throw bad();
    Integer num(num_part), den(den_part);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

/// Conversion for statistics reporting only; never used in exact decisions.
inline double rat_to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace linerec

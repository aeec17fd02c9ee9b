#pragma once

// Exact scalar types used throughout: arbitrary-precision integers and
// rationals kept in lowest terms with positive denominator.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace wallkit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

using ZVec = std::vector<Int>;
using QVec = std::vector<Rational>;

inline Int num(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int den(const Rational& q) { return boost::multiprecision::denominator(q); }

inline int sgn(const Int& x) { return x.sign(); }
inline int sgn(const Rational& q) { return q.sign(); }

inline Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

// p/q with the sign moved onto the numerator; the underlying type insists on
// a positive denominator.
inline Rational make_rational(Int p, Int q) {
    if (q == 0) throw std::invalid_argument("zero denominator");
    if (q < 0) { p = -p; q = -q; }
    return Rational(std::move(p), std::move(q));
}

// Formats as "p" for integers and "p/q" otherwise; the sign sits on the numerator.
inline std::string to_string(const Rational& q) {
    if (den(q) == 1) return num(q).str();
    return num(q).str() + "/" + den(q).str();
}

// Accepts "p", "-p", "p/q"; whitespace is not tolerated.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        return make_rational(std::move(p), std::move(q));
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("malformed rational literal: " + s);
    }
}

inline Rational dot(const QVec& a, const QVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Rational r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline Int dot(const ZVec& a, const ZVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
    Int r = 0;
    for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
    return r;
}

inline QVec to_rational(const ZVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rational(v[i]);
    return r;
}

// gcd of all entries, nonnegative; 0 only for the zero vector.
inline Int content(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd_int(g, x);
    return g;
}

// Scales a rational vector to a primitive integer vector pointing the same way.
// The zero vector maps to the zero vector.
inline ZVec primitive(const QVec& v) {
    Int l = 1;
    for (const auto& q : v) l = l / gcd_int(l, den(q)) * den(q);
    ZVec w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = num(v[i]) * (l / den(v[i]));
    Int g = content(w);
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

inline ZVec primitive(const ZVec& v) {
    ZVec w = v;
    Int g = content(w);
    if (g > 1)
        for (auto& x : w) x /= g;
    return w;
}

} // namespace wallkit

#pragma once

// Scalar layer: exact rationals (boost::multiprecision) and the traits that
// let every algebraic component be instantiated for either exact or double
// arithmetic.  Exact mode is the default for identity verification; double
// mode exists for systems whose root data are irrational.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace polysym {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;  // kept in lowest terms by boost

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline BigInt numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// Floor square root test: returns the exact integer square root if n is a
// perfect square, nullopt otherwise.
inline std::optional<BigInt> exact_sqrt(const BigInt& n) {
    if (n < 0) return std::nullopt;
    BigInt s = boost::multiprecision::sqrt(n);
    if (s * s == n) return s;
    return std::nullopt;
}

// Exact square root of a rational, when it exists in Q.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    auto sn = exact_sqrt(numerator(r));
    auto sd = exact_sqrt(denominator(r));
    if (sn && sd) return Rational(*sn, *sd);
    return std::nullopt;
}

// Signed base-10 integer parse.  cpp_int's string constructor treats a
// leading '0' as a base-8 prefix, so digits are accumulated explicitly.
inline std::optional<BigInt> parse_base10(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
    if (i == s.size()) return std::nullopt;
    BigInt v = 0;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
        v = v * 10 + (s[i] - '0');
    }
    if (neg) v = -v;
    return v;
}

// Parse "3", "-7/2", "0.25", "+1" into an exact rational.  Decimal strings
// convert exactly (base-10 digits over a power of ten); anything else throws.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> std::runtime_error {
        return std::runtime_error("cannot parse rational from '" + text + "'");
    };
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw bad();

    auto slash = s.find('/');
    if (slash != std::string::npos) {
        auto num = parse_base10(s.substr(0, slash));
        auto den = parse_base10(s.substr(slash + 1));
        if (!num || !den || *den == 0) throw bad();
        Rational r{*num, *den};
        return r;
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (tail.empty() && (head.empty() || head == "+" || head == "-")) throw bad();
        bool neg = !head.empty() && head[0] == '-';
        if (!head.empty() && (head[0] == '+' || head[0] == '-')) head = head.substr(1);
        BigInt digits = 0;
        BigInt scale = 1;
        for (char c : head + tail) {
            if (!std::isdigit(static_cast<unsigned char>(c))) throw bad();
            digits = digits * 10 + (c - '0');
        }
        if ((head + tail).empty()) throw bad();
        for (std::size_t i = 0; i < tail.size(); ++i) scale *= 10;
        Rational r(digits, scale);
        return neg ? Rational(-r) : r;
    }
    auto whole = parse_base10(s);
    if (!whole) throw bad();
    return Rational(*whole);
}

inline std::string to_string(const Rational& r) { return r.str(); }

// ---------------------------------------------------------------------------
// scalar_traits: the handful of operations that differ between exact and
// floating arithmetic.  Template code tests `scalar_traits<R>::exact` instead
// of comparing types.
// ---------------------------------------------------------------------------

template <class R>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
    static constexpr bool exact = true;
    static Rational zero() { return Rational(0); }
    static Rational one() { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
    static Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
    static std::optional<Rational> sqrt(const Rational& x) { return exact_sqrt(x); }
    static Rational from_rational(const Rational& q) { return q; }
    static std::string str(const Rational& x) { return x.str(); }
};

template <>
struct scalar_traits<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    // Tolerant zero test used only for coefficient trimming in double mode.
    static bool is_zero(double x) { return x == 0.0; }
    static double abs(double x) { return std::fabs(x); }
    static std::optional<double> sqrt(double x) {
        if (x < 0) return std::nullopt;
        return std::sqrt(x);
    }
    static double from_rational(const Rational& q) { return to_double(q); }
    static std::string str(double x) { return std::to_string(x); }
};

template <class R>
inline constexpr bool is_exact_v = scalar_traits<R>::exact;

// Convert scalars between the two backends (Rational -> double is lossy and
// only used when leaving exact mode deliberately).
template <class To, class From>
To scalar_cast(const From& x) {
    if constexpr (std::is_same_v<To, From>) return x;
    else if constexpr (std::is_same_v<To, double>) return to_double(x);
    else {
        static_assert(std::is_same_v<From, double>, "unsupported scalar conversion");
        throw std::logic_error("refusing implicit double -> exact conversion");
    }
}

}  // namespace polysym

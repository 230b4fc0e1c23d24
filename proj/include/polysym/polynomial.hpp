#pragma once

// Dense univariate polynomials over an exact or floating scalar.  Coefficients
// are stored lowest degree first and trailing zeros are trimmed, so the zero
// polynomial has an empty coefficient vector and degree() == -1.

#include "polysym/rational.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace polysym {

template <class R>
class polynomial {
  public:
    polynomial() = default;
    explicit polynomial(std::vector<R> coeffs) : c_(std::move(coeffs)) { trim(); }
    polynomial(std::initializer_list<R> coeffs) : c_(coeffs) { trim(); }

    static polynomial zero() { return polynomial(); }
    static polynomial constant(const R& a) { return polynomial({a}); }
    // x^k with unit coefficient
    static polynomial monomial(int k, const R& a = scalar_traits<R>::one()) {
        if (k < 0) throw std::invalid_argument("polynomial: negative exponent");
        std::vector<R> c(static_cast<std::size_t>(k) + 1, scalar_traits<R>::zero());
        c.back() = a;
        return polynomial(std::move(c));
    }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    const R& operator[](int k) const {
        static const R kZero = scalar_traits<R>::zero();
        if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
        return c_[static_cast<std::size_t>(k)];
    }
    const std::vector<R>& coeffs() const { return c_; }

    R leading() const {
        if (c_.empty()) throw std::logic_error("polynomial: leading coefficient of zero");
        return c_.back();
    }

    template <class X>
    X eval(const X& x) const {
        X acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }
    R operator()(const R& x) const { return eval<R>(x); }

    polynomial derivative() const {
        if (c_.size() <= 1) return polynomial();
        std::vector<R> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k)
            d[k - 1] = c_[k] * R(static_cast<int>(k));
        return polynomial(std::move(d));
    }

    // P(x + a), exact Taylor shift via repeated synthetic division.
    polynomial shifted(const R& a) const {
        std::vector<R> b = c_;
        const int n = static_cast<int>(b.size());
        for (int i = 0; i < n; ++i)
            for (int j = n - 2; j >= i; --j)
                b[static_cast<std::size_t>(j)] += a * b[static_cast<std::size_t>(j) + 1];
        return polynomial(std::move(b));
    }

    // P(s * x), coefficient-wise scaling of the argument.
    polynomial arg_scaled(const R& s) const {
        std::vector<R> b = c_;
        R p = scalar_traits<R>::one();
        for (std::size_t k = 1; k < b.size(); ++k) {
            p = p * s;
            b[k] = b[k] * p;
        }
        return polynomial(std::move(b));
    }

    polynomial& operator+=(const polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), scalar_traits<R>::zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
        trim();
        return *this;
    }
    polynomial& operator-=(const polynomial& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), scalar_traits<R>::zero());
        for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
        trim();
        return *this;
    }
    polynomial& operator*=(const R& s) {
        for (auto& a : c_) a *= s;
        trim();
        return *this;
    }

    friend polynomial operator+(polynomial a, const polynomial& b) { return a += b; }
    friend polynomial operator-(polynomial a, const polynomial& b) { return a -= b; }
    friend polynomial operator*(polynomial a, const R& s) { return a *= s; }
    friend polynomial operator*(const R& s, polynomial a) { return a *= s; }
    friend polynomial operator-(polynomial a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }

    friend polynomial operator*(const polynomial& a, const polynomial& b) {
        if (a.is_zero() || b.is_zero()) return polynomial();
        std::vector<R> c(a.c_.size() + b.c_.size() - 1, scalar_traits<R>::zero());
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] += a.c_[i] * b.c_[j];
        return polynomial(std::move(c));
    }

    friend bool operator==(const polynomial& a, const polynomial& b) { return a.c_ == b.c_; }
    friend bool operator!=(const polynomial& a, const polynomial& b) { return !(a == b); }

  private:
    void trim() {
        while (!c_.empty() && scalar_traits<R>::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<R> c_;
};

// lc * prod (x - r_i) expanded; convenience for building test fixtures and
// for validating stored factorizations.
template <class R>
polynomial<R> from_roots(const R& lc, const std::vector<R>& roots) {
    polynomial<R> p = polynomial<R>::constant(lc);
    for (const R& r : roots)
        p = p * polynomial<R>{-r, scalar_traits<R>::one()};
    return p;
}

template <class R>
polynomial<double> to_double_poly(const polynomial<R>& p) {
    std::vector<double> c;
    c.reserve(static_cast<std::size_t>(p.degree() + 1));
    for (int k = 0; k <= p.degree(); ++k) c.push_back(to_double(p[k]));
    return polynomial<double>(std::move(c));
}

}  // namespace polysym

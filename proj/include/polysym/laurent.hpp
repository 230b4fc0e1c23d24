#pragma once

// Laurent polynomials: finite sums a_k x^k with integer k down to a fixed
// floor.  These are the coefficient ring for differential operators — the
// models need x^-2 potentials and ladder coefficients down to x^-2, and
// operator composition pushes exponents a few steps lower.  The floor is a
// guard rail: hitting it means an operator product left the intended space,
// which is always a bug upstream, so it throws instead of truncating.

#include "polysym/rational.hpp"

#include <map>
#include <stdexcept>

namespace polysym {

inline constexpr int kLaurentFloor = -6;

struct laurent_floor_error : std::runtime_error {
    explicit laurent_floor_error(int k)
        : std::runtime_error("laurent: exponent " + std::to_string(k) + " below floor " +
                             std::to_string(kLaurentFloor)) {}
};

template <class R>
class laurent {
  public:
    laurent() = default;

    static laurent constant(const R& a) {
        laurent l;
        l.set(0, a);
        return l;
    }
    static laurent term(int k, const R& a) {
        laurent l;
        l.set(k, a);
        return l;
    }

    bool is_zero() const { return t_.empty(); }
    const std::map<int, R>& terms() const { return t_; }

    R coeff(int k) const {
        auto it = t_.find(k);
        return it == t_.end() ? scalar_traits<R>::zero() : it->second;
    }

    void set(int k, const R& a) {
        check_floor(k);
        if (scalar_traits<R>::is_zero(a))
            t_.erase(k);
        else
            t_[k] = a;
    }
    void add(int k, const R& a) {
        check_floor(k);
        auto it = t_.find(k);
        if (it == t_.end()) {
            if (!scalar_traits<R>::is_zero(a)) t_[k] = a;
            return;
        }
        it->second += a;
        if (scalar_traits<R>::is_zero(it->second)) t_.erase(it);
    }

    laurent& operator+=(const laurent& o) {
        for (const auto& [k, a] : o.t_) add(k, a);
        return *this;
    }
    laurent& operator-=(const laurent& o) {
        for (const auto& [k, a] : o.t_) add(k, R(-a));
        return *this;
    }
    laurent& operator*=(const R& s) {
        if (scalar_traits<R>::is_zero(s)) {
            t_.clear();
            return *this;
        }
        for (auto& [k, a] : t_) a *= s;
        prune();
        return *this;
    }

    friend laurent operator+(laurent a, const laurent& b) { return a += b; }
    friend laurent operator-(laurent a, const laurent& b) { return a -= b; }
    friend laurent operator*(laurent a, const R& s) { return a *= s; }
    friend laurent operator*(const R& s, laurent a) { return a *= s; }
    friend laurent operator-(laurent a) {
        for (auto& [k, v] : a.t_) v = -v;
        return a;
    }

    friend laurent operator*(const laurent& a, const laurent& b) {
        laurent c;
        for (const auto& [i, x] : a.t_)
            for (const auto& [j, y] : b.t_) c.add(i + j, x * y);
        return c;
    }

    friend bool operator==(const laurent& a, const laurent& b) { return a.t_ == b.t_; }
    friend bool operator!=(const laurent& a, const laurent& b) { return !(a == b); }

    // d/dx; the x^0 term drops, negative exponents walk toward the floor.
    laurent derivative() const {
        laurent d;
        for (const auto& [k, a] : t_) {
            if (k == 0) continue;
            d.add(k - 1, a * R(k));
        }
        return d;
    }

    template <class X>
    X eval(const X& x) const {
        X acc{};
        for (const auto& [k, a] : t_) {
            X p = X(1);
            for (int i = 0; i < (k >= 0 ? k : -k); ++i) p = p * x;
            if (k < 0) p = X(1) / p;
            acc += X(a) * p;
        }
        return acc;
    }

    double inf_norm() const {
        double m = 0.0;
        for (const auto& [k, a] : t_) m = std::max(m, std::abs(to_double(a)));
        return m;
    }

  private:
    static void check_floor(int k) {
        if (k < kLaurentFloor) throw laurent_floor_error(k);
    }
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = scalar_traits<R>::is_zero(it->second) ? t_.erase(it) : std::next(it);
    }
    std::map<int, R> t_;
};

}  // namespace polysym

#pragma once

// Bivariate polynomials in the two commuting symbols (H, A): the Hamiltonian
// and the ladder-difference generator.  Dense rectangular storage, coefficient
// of H^i A^j at m_[i][j].  These carry the structure function F(H, A) and the
// ladder commutator; everything stays exact when R is rational.

#include "polysym/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace polysym {

template <class R>
class bivariate {
  public:
    bivariate() = default;

    static bivariate zero() { return bivariate(); }
    static bivariate constant(const R& a) {
        bivariate b;
        if (!scalar_traits<R>::is_zero(a)) b.m_ = {{a}};
        return b;
    }
    // c + ch*H + ca*A, the affine building block for substitutions.
    static bivariate affine(const R& c, const R& ch, const R& ca) {
        bivariate b;
        b.m_ = {{c, ca}, {ch, scalar_traits<R>::zero()}};
        b.trim();
        return b;
    }

    bool is_zero() const { return m_.empty(); }
    int deg_h() const { return static_cast<int>(m_.size()) - 1; }
    int deg_a() const {
        int d = -1;
        for (const auto& row : m_) d = std::max(d, static_cast<int>(row.size()) - 1);
        return d;
    }

    const R& coeff(int i, int j) const {
        static const R kZero = scalar_traits<R>::zero();
        if (i < 0 || i >= static_cast<int>(m_.size())) return kZero;
        const auto& row = m_[static_cast<std::size_t>(i)];
        if (j < 0 || j >= static_cast<int>(row.size())) return kZero;
        return row[static_cast<std::size_t>(j)];
    }
    void set_coeff(int i, int j, const R& v) {
        if (i < 0 || j < 0) throw std::invalid_argument("bivariate: negative exponent");
        if (i >= static_cast<int>(m_.size())) m_.resize(static_cast<std::size_t>(i) + 1);
        auto& row = m_[static_cast<std::size_t>(i)];
        if (j >= static_cast<int>(row.size()))
            row.resize(static_cast<std::size_t>(j) + 1, scalar_traits<R>::zero());
        row[static_cast<std::size_t>(j)] = v;
        trim();
    }

    template <class X>
    X eval(const X& h, const X& a) const {
        // Horner in H of Horner-in-A row evaluations.
        X acc{};
        for (auto it = m_.rbegin(); it != m_.rend(); ++it) {
            X row{};
            for (auto jt = it->rbegin(); jt != it->rend(); ++jt) row = row * a + X(*jt);
            acc = acc * h + row;
        }
        return acc;
    }

    // Sum of |c_ij| |h|^i |a|^j: the magnitude an evaluation at (h, a) cancels
    // against, i.e. the right scale for judging a float result to be zero.
    double eval_abs(double h, double a) const {
        double acc = 0.0, hp = 1.0;
        for (const auto& row : m_) {
            double rsum = 0.0, ap = 1.0;
            for (const auto& c : row) {
                rsum += std::abs(to_double(c)) * ap;
                ap *= std::abs(a);
            }
            acc += rsum * hp;
            hp *= std::abs(h);
        }
        return acc;
    }

    bivariate& operator+=(const bivariate& o) {
        grow_to(o);
        for (std::size_t i = 0; i < o.m_.size(); ++i)
            for (std::size_t j = 0; j < o.m_[i].size(); ++j) m_[i][j] += o.m_[i][j];
        trim();
        return *this;
    }
    bivariate& operator-=(const bivariate& o) {
        grow_to(o);
        for (std::size_t i = 0; i < o.m_.size(); ++i)
            for (std::size_t j = 0; j < o.m_[i].size(); ++j) m_[i][j] -= o.m_[i][j];
        trim();
        return *this;
    }
    bivariate& operator*=(const R& s) {
        for (auto& row : m_)
            for (auto& x : row) x *= s;
        trim();
        return *this;
    }

    friend bivariate operator+(bivariate a, const bivariate& b) { return a += b; }
    friend bivariate operator-(bivariate a, const bivariate& b) { return a -= b; }
    friend bivariate operator*(bivariate a, const R& s) { return a *= s; }
    friend bivariate operator*(const R& s, bivariate a) { return a *= s; }
    friend bivariate operator-(bivariate a) {
        for (auto& row : a.m_)
            for (auto& x : row) x = -x;
        return a;
    }

    friend bivariate operator*(const bivariate& a, const bivariate& b) {
        if (a.is_zero() || b.is_zero()) return bivariate();
        bivariate c;
        c.m_.assign(a.m_.size() + b.m_.size() - 1, {});
        std::size_t width = static_cast<std::size_t>(a.deg_a() + b.deg_a()) + 1;
        for (auto& row : c.m_) row.assign(width, scalar_traits<R>::zero());
        for (std::size_t i = 0; i < a.m_.size(); ++i)
            for (std::size_t j = 0; j < a.m_[i].size(); ++j) {
                if (scalar_traits<R>::is_zero(a.m_[i][j])) continue;
                for (std::size_t k = 0; k < b.m_.size(); ++k)
                    for (std::size_t l = 0; l < b.m_[k].size(); ++l)
                        c.m_[i + k][j + l] += a.m_[i][j] * b.m_[k][l];
            }
        c.trim();
        return c;
    }

    friend bool operator==(const bivariate& a, const bivariate& b) { return a.m_ == b.m_; }
    friend bool operator!=(const bivariate& a, const bivariate& b) { return !(a == b); }

    // F(H, A + 1): binomial expansion of each A power, exact.
    bivariate shifted_a() const {
        bivariate out;
        for (std::size_t i = 0; i < m_.size(); ++i) {
            const auto& row = m_[i];
            if (row.empty()) continue;
            // Pascal row reused across coefficients of equal j.
            for (std::size_t j = 0; j < row.size(); ++j) {
                if (scalar_traits<R>::is_zero(row[j])) continue;
                // (A+1)^j = sum_k C(j,k) A^k
                R binom = scalar_traits<R>::one();
                for (std::size_t k = 0; k <= j; ++k) {
                    out.add_at(static_cast<int>(i), static_cast<int>(k), row[j] * binom);
                    binom = binom * R(static_cast<int>(j - k)) / R(static_cast<int>(k) + 1);
                }
            }
        }
        out.trim();
        return out;
    }

    // Largest absolute coefficient, for float-mode residual reporting.
    double inf_norm() const {
        double m = 0.0;
        for (const auto& row : m_)
            for (const auto& x : row) m = std::max(m, std::abs(to_double(x)));
        return m;
    }

  private:
    void add_at(int i, int j, const R& v) {
        if (i >= static_cast<int>(m_.size())) m_.resize(static_cast<std::size_t>(i) + 1);
        auto& row = m_[static_cast<std::size_t>(i)];
        if (j >= static_cast<int>(row.size()))
            row.resize(static_cast<std::size_t>(j) + 1, scalar_traits<R>::zero());
        row[static_cast<std::size_t>(j)] += v;
    }
    void grow_to(const bivariate& o) {
        if (o.m_.size() > m_.size()) m_.resize(o.m_.size());
        for (std::size_t i = 0; i < o.m_.size(); ++i)
            if (o.m_[i].size() > m_[i].size())
                m_[i].resize(o.m_[i].size(), scalar_traits<R>::zero());
    }
    void trim() {
        for (auto& row : m_)
            while (!row.empty() && scalar_traits<R>::is_zero(row.back())) row.pop_back();
        while (!m_.empty() && m_.back().empty()) m_.pop_back();
    }

    std::vector<std::vector<R>> m_;  // m_[i][j] multiplies H^i A^j
};

// P(c + ch*H + ca*A) for univariate P: Horner with bivariate accumulator.
template <class R>
bivariate<R> compose_affine(const polynomial<R>& p, const R& c, const R& ch, const R& ca) {
    bivariate<R> arg = bivariate<R>::affine(c, ch, ca);
    bivariate<R> acc;
    for (int k = p.degree(); k >= 0; --k) {
        acc = acc * arg;
        acc += bivariate<R>::constant(p[k]);
    }
    return acc;
}

}  // namespace polysym

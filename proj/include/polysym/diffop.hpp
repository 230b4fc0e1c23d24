#pragma once

// One-dimensional differential operators sum_j c_j(x) d^j with Laurent
// coefficients.  Supplies the three operations the ladder construction needs:
// composition (Leibniz), commutators, and exact re-expression of an operator
// as a polynomial in a given Hamiltonian.

#include "polysym/laurent.hpp"
#include "polysym/polynomial.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polysym {

template <class R>
class diff_operator {
  public:
    diff_operator() = default;

    static diff_operator zero() { return diff_operator(); }
    static diff_operator identity() { return term(0, laurent<R>::constant(scalar_traits<R>::one())); }
    // c(x) * d^j
    static diff_operator term(int order, laurent<R> c) {
        if (order < 0) throw std::invalid_argument("diff_operator: negative order");
        diff_operator d;
        if (!c.is_zero()) d.t_[order] = std::move(c);
        return d;
    }
    static diff_operator multiplication(laurent<R> c) { return term(0, std::move(c)); }
    static diff_operator derivative(int order = 1) {
        return term(order, laurent<R>::constant(scalar_traits<R>::one()));
    }

    bool is_zero() const { return t_.empty(); }
    int max_order() const { return t_.empty() ? -1 : t_.rbegin()->first; }
    const std::map<int, laurent<R>>& terms() const { return t_; }
    laurent<R> coeff(int order) const {
        auto it = t_.find(order);
        return it == t_.end() ? laurent<R>() : it->second;
    }

    diff_operator& operator+=(const diff_operator& o) {
        for (const auto& [j, c] : o.t_) add_term(j, c);
        return *this;
    }
    diff_operator& operator-=(const diff_operator& o) {
        for (const auto& [j, c] : o.t_) add_term(j, -c);
        return *this;
    }
    diff_operator& operator*=(const R& s) {
        for (auto& [j, c] : t_) c *= s;
        prune();
        return *this;
    }

    friend diff_operator operator+(diff_operator a, const diff_operator& b) { return a += b; }
    friend diff_operator operator-(diff_operator a, const diff_operator& b) { return a -= b; }
    friend diff_operator operator*(diff_operator a, const R& s) { return a *= s; }
    friend diff_operator operator*(const R& s, diff_operator a) { return a *= s; }
    friend diff_operator operator-(diff_operator a) {
        for (auto& [j, c] : a.t_) c = -c;
        return a;
    }

    // Operator composition: c(x) d^j applied after b(x) d^i expands by Leibniz
    // into sum_s C(j,s) c(x) b^{(s)}(x) d^{j+i-s}.
    friend diff_operator operator*(const diff_operator& a, const diff_operator& b) {
        diff_operator out;
        for (const auto& [j, c] : a.t_) {
            for (const auto& [i, bc] : b.t_) {
                laurent<R> deriv = bc;  // s-th derivative of b's coefficient
                R binom = scalar_traits<R>::one();
                for (int s = 0; s <= j; ++s) {
                    if (!deriv.is_zero()) out.add_term(j + i - s, (c * deriv) * binom);
                    if (s == j) break;
                    deriv = deriv.derivative();
                    binom = binom * R(j - s) / R(s + 1);
                }
            }
        }
        return out;
    }

    friend bool operator==(const diff_operator& a, const diff_operator& b) { return a.t_ == b.t_; }
    friend bool operator!=(const diff_operator& a, const diff_operator& b) { return !(a == b); }

    double inf_norm() const {
        double m = 0.0;
        for (const auto& [j, c] : t_) m = std::max(m, c.inf_norm());
        return m;
    }

  private:
    void add_term(int order, const laurent<R>& c) {
        auto it = t_.find(order);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[order] = c;
            return;
        }
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
    void prune() {
        for (auto it = t_.begin(); it != t_.end();)
            it = it->second.is_zero() ? t_.erase(it) : std::next(it);
    }
    std::map<int, laurent<R>> t_;
};

template <class R>
diff_operator<R> commutator(const diff_operator<R>& a, const diff_operator<R>& b) {
    return a * b - b * a;
}

template <class R>
diff_operator<R> power(const diff_operator<R>& a, int k) {
    if (k < 0) throw std::invalid_argument("diff_operator power: negative exponent");
    diff_operator<R> out = diff_operator<R>::identity();
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

// ---------------------------------------------------------------------------
// express_in_h: find the unique polynomial P with T = P(H), or fail loudly.
//
// The operators are flattened onto the joint basis of (derivative order,
// Laurent exponent) monomials; matching coefficients gives an exact linear
// system in P's coefficients, solved by fraction-free-enough Gaussian
// elimination over the rationals.  Exact arithmetic only — this routine sits
// on the verification path, where a silently lossy solve would defeat the
// point.
// ---------------------------------------------------------------------------

struct not_in_span_error : std::runtime_error {
    explicit not_in_span_error(const std::string& what, double residual)
        : std::runtime_error(what), residual_norm(residual) {}
    double residual_norm;
};

template <class R>
polynomial<R> express_in_h(const diff_operator<R>& target, const diff_operator<R>& h,
                           int max_deg) {
    static_assert(is_exact_v<R>, "express_in_h requires exact arithmetic");
    if (max_deg < 0) throw std::invalid_argument("express_in_h: negative degree bound");

    std::vector<diff_operator<R>> powers;
    powers.reserve(static_cast<std::size_t>(max_deg) + 1);
    powers.push_back(diff_operator<R>::identity());
    for (int k = 1; k <= max_deg; ++k) powers.push_back(powers.back() * h);

    // Collect every (order, exponent) slot touched by the target or any power.
    std::map<std::pair<int, int>, std::size_t> slot_index;
    auto register_slots = [&](const diff_operator<R>& op) {
        for (const auto& [j, c] : op.terms())
            for (const auto& [k, v] : c.terms()) {
                (void)v;
                slot_index.emplace(std::make_pair(j, k), slot_index.size());
            }
    };
    register_slots(target);
    for (const auto& p : powers) register_slots(p);

    const std::size_t rows = slot_index.size();
    const std::size_t cols = static_cast<std::size_t>(max_deg) + 1;
    std::vector<std::vector<R>> m(rows, std::vector<R>(cols + 1, scalar_traits<R>::zero()));
    for (std::size_t a = 0; a < cols; ++a)
        for (const auto& [j, c] : powers[a].terms())
            for (const auto& [k, v] : c.terms()) m[slot_index.at({j, k})][a] = v;
    for (const auto& [j, c] : target.terms())
        for (const auto& [k, v] : c.terms()) m[slot_index.at({j, k})][cols] = v;

    // Forward elimination with column pivoting by first nonzero entry.
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pr = rank;
        while (pr < rows && scalar_traits<R>::is_zero(m[pr][col])) ++pr;
        if (pr == rows) continue;
        std::swap(m[rank], m[pr]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || scalar_traits<R>::is_zero(m[r][col])) continue;
            R f = m[r][col] / m[rank][col];
            for (std::size_t cc = col; cc <= cols; ++cc) m[r][cc] -= f * m[rank][cc];
        }
        pivot_col.push_back(col);
        ++rank;
    }

    // Rows below the rank must have vanished entirely; a surviving right-hand
    // side means the target is not a polynomial in H up to max_deg.
    for (std::size_t r = rank; r < rows; ++r) {
        if (!scalar_traits<R>::is_zero(m[r][cols])) {
            double res = std::abs(to_double(m[r][cols]));
            std::ostringstream msg;
            msg << "express_in_h: target is outside span{H^0..H^" << max_deg
                << "} (residual " << res << ")";
            throw not_in_span_error(msg.str(), res);
        }
    }

    std::vector<R> coeff(cols, scalar_traits<R>::zero());
    for (std::size_t r = 0; r < rank; ++r)
        coeff[pivot_col[r]] = m[r][cols] / m[r][pivot_col[r]];
    polynomial<R> p(std::move(coeff));

    // Recomposition check: cheap, and turns any elimination bug into a loud
    // failure instead of a wrong certificate downstream.
    diff_operator<R> recomposed;
    for (int k = 0; k <= p.degree(); ++k)
        recomposed += powers[static_cast<std::size_t>(k)] * p[k];
    diff_operator<R> residual = target - recomposed;
    if (!residual.is_zero())
        throw not_in_span_error("express_in_h: nonzero recomposition residual",
                                residual.inf_norm());
    return p;
}

// ---------------------------------------------------------------------------
// Ladder certification: does [H, L] = lambda * L hold identically?
// ---------------------------------------------------------------------------

struct certificate {
    bool pass = false;
    double residual_norm = 0.0;  // inf-norm of the defect operator
    std::string detail;
};

template <class R>
certificate certify_ladder(const diff_operator<R>& h, const diff_operator<R>& ladder,
                           const R& lambda, double tol = 0.0) {
    diff_operator<R> defect = commutator(h, ladder) - ladder * lambda;
    certificate c;
    c.residual_norm = defect.inf_norm();
    if constexpr (is_exact_v<R>) {
        c.pass = defect.is_zero();
        c.detail = c.pass ? "[H,L] - lambda*L vanishes identically"
                          : "[H,L] - lambda*L has nonzero exact coefficients";
    } else {
        double scale = std::max({h.inf_norm() * ladder.inf_norm(), ladder.inf_norm(), 1.0});
        double t = tol > 0 ? tol : 1e-12;
        c.pass = c.residual_norm <= t * scale;
        c.detail = c.pass ? "[H,L] - lambda*L within float tolerance"
                          : "[H,L] - lambda*L exceeds float tolerance";
    }
    return c;
}

}  // namespace polysym

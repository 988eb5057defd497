#pragma once

#include <climits>
#include <complex>
#include <map>
#include <stdexcept>
#include <vector>

#include "strata/bipoly.hpp"

namespace strata {

// Square-root generator adjoined to the polynomial ring.
//   uv_disc : g = v^2 - 4u          (discriminant of the spectral quadratic)
//   xs_rho  : g = xi^2 + sigma^2 - 1
enum class RadGen { uv_disc, xs_rho };

BiPoly radical_generator(RadGen gen);
Vars radical_vars(RadGen gen);

// Element of BiPoly[sqrt(g), 1/sqrt(g)]: finite sum of p_k * g^{k/2}, k integer.
class RadicalPoly {
public:
    RadicalPoly() : gen_(RadGen::xs_rho) {}
    explicit RadicalPoly(RadGen gen) : gen_(gen) {}
    static RadicalPoly from_poly(RadGen gen, const BiPoly& p, int half_power = 0);
    static RadicalPoly sqrt_gen(RadGen gen) {
        return from_poly(gen, BiPoly::constant(radical_vars(gen), Rational(1)), 1);
    }

    RadGen gen() const { return gen_; }
    Vars vars() const { return radical_vars(gen_); }
    const std::map<int, BiPoly>& parts() const { return parts_; }
    BiPoly part(int half_power) const;

    bool is_zero() const;
    RadicalPoly& operator+=(const RadicalPoly& o);
    RadicalPoly& operator-=(const RadicalPoly& o);
    RadicalPoly& operator*=(const RadicalPoly& o);
    RadicalPoly& operator*=(const Rational& c);
    friend RadicalPoly operator+(RadicalPoly a, const RadicalPoly& b) { return a += b; }
    friend RadicalPoly operator-(RadicalPoly a, const RadicalPoly& b) { return a -= b; }
    friend RadicalPoly operator*(RadicalPoly a, const RadicalPoly& b) { return a *= b; }
    friend RadicalPoly operator*(RadicalPoly a, const Rational& c) { return a *= c; }
    RadicalPoly operator-() const;
    friend bool operator==(const RadicalPoly& a, const RadicalPoly& b) {
        RadicalPoly d = a;
        d -= b;
        return d.is_zero();
    }

    RadicalPoly diff(int which) const;

    // Canonical cleanup: fold half-powers >= 2 downward (multiplying by g),
    // lift negative half-powers by exact division where possible.
    void normalize();

    // Principal-branch evaluation; valid on both signs of g.
    std::complex<double> eval_complex(double x, double y) const;
    double eval_d(double x, double y) const;  // throws off the g > 0 region

    std::string str() const;

private:
    void set_part(int k, BiPoly p);
    RadGen gen_;
    std::map<int, BiPoly> parts_;  // half-power -> coefficient polynomial
};

inline BiPoly unit_like(const BiPoly& z) { return BiPoly::constant(z.vars(), Rational(1)); }
inline RadicalPoly unit_like(const RadicalPoly& z) {
    return RadicalPoly::from_poly(z.gen(), BiPoly::constant(z.vars(), Rational(1)), 0);
}

// Truncated Laurent series in an auxiliary parameter with ring coefficients.
// Tracks the window of powers whose coefficients are reliable; requesting a
// coefficient outside the window throws instead of returning a silent zero.
template <typename R>
class Series {
public:
    static constexpr int kUnbounded = INT_MAX / 4;

    explicit Series(R zero) : zero_(std::move(zero)) {}

    R zero_coeff() const { return zero_; }
    int lo_reliable() const { return lo_; }
    int hi_reliable() const { return hi_; }
    bool empty() const { return t_.empty(); }
    int support_min() const { return t_.empty() ? kUnbounded : t_.begin()->first; }
    int support_max() const { return t_.empty() ? -kUnbounded : t_.rbegin()->first; }
    const std::map<int, R>& terms() const { return t_; }

    void set(int k, R c) {
        if (c.is_zero())
            t_.erase(k);
        else
            t_[k] = std::move(c);
    }

    void restrict_window(int lo, int hi) {
        lo_ = std::max(lo_, lo);
        hi_ = std::min(hi_, hi);
        drop_outside();
    }

    R coeff(int k) const {
        if (k < lo_ || k > hi_)
            throw std::out_of_range("Series::coeff: power outside the reliable window");
        auto it = t_.find(k);
        return it == t_.end() ? zero_ : it->second;
    }

    Series& operator+=(const Series& o) {
        lo_ = std::max(lo_, o.lo_);
        hi_ = std::min(hi_, o.hi_);
        for (const auto& [k, c] : o.t_) {
            auto it = t_.find(k);
            if (it == t_.end()) {
                t_[k] = c;
            } else {
                it->second += c;
                if (it->second.is_zero()) t_.erase(it);
            }
        }
        drop_outside();
        return *this;
    }

    Series& operator-=(const Series& o) {
        Series neg = o;
        for (auto& [k, c] : neg.t_) c = -c;
        return *this += neg;
    }

    friend Series operator+(Series a, const Series& b) { return a += b; }
    friend Series operator-(Series a, const Series& b) { return a -= b; }

    friend Series operator*(const Series& a, const Series& b) {
        Series out(a.zero_);
        // A dropped low (high) tail in one factor contaminates the product
        // from that tail shifted by the other factor's support extreme.
        if (a.lo_ > -kUnbounded || b.lo_ > -kUnbounded)
            out.lo_ = std::max(a.lo_ + b.support_max(), b.lo_ + a.support_max());
        if (a.hi_ < kUnbounded || b.hi_ < kUnbounded)
            out.hi_ = std::min(a.hi_ + b.support_min(), b.hi_ + a.support_min());
        for (const auto& [ka, ca] : a.t_)
            for (const auto& [kb, cb] : b.t_) {
                int k = ka + kb;
                if (k < out.lo_ || k > out.hi_) continue;
                auto it = out.t_.find(k);
                if (it == out.t_.end()) {
                    R prod = ca * cb;
                    if (!prod.is_zero()) out.t_.emplace(k, std::move(prod));
                } else {
                    it->second += ca * cb;
                    if (it->second.is_zero()) out.t_.erase(it);
                }
            }
        return out;
    }

    Series& operator*=(const Series& o) { return *this = *this * o; }

    Series scaled(const Rational& c) const {
        Series out = *this;
        if (c.is_zero()) {
            out.t_.clear();
            return out;
        }
        for (auto& [k, v] : out.t_) v *= c;
        return out;
    }

    Series shifted(int dk) const {
        Series out(zero_);
        if (lo_ > -kUnbounded) out.lo_ = lo_ + dk;
        if (hi_ < kUnbounded) out.hi_ = hi_ + dk;
        for (const auto& [k, c] : t_) out.t_.emplace(k + dk, c);
        return out;
    }

private:
    void drop_outside() {
        for (auto it = t_.begin(); it != t_.end();)
            it = (it->first < lo_ || it->first > hi_) ? t_.erase(it) : std::next(it);
    }

    R zero_;
    std::map<int, R> t_;
    int lo_ = -kUnbounded;
    int hi_ = kUnbounded;
};

// Rational binomial coefficient C(1/2, m).
Rational binom_half(int m);

// sqrt(1 + w) as a truncated binomial series, for w supported strictly on one
// side of zero (pure negative powers: expansion at infinity; pure positive:
// expansion at the origin). The result window is clipped to [lo_target, hi_target].
template <typename R>
Series<R> sqrt_one_plus(const Series<R>& w, int lo_target, int hi_target) {
    Series<R> out(w.zero_coeff());
    if (w.empty()) {
        out.set(0, unit_like(w.zero_coeff()));
        out.restrict_window(std::max(w.lo_reliable(), lo_target),
                            std::min(w.hi_reliable(), hi_target));
        return out;
    }
    if (!(w.support_max() < 0 || w.support_min() > 0))
        throw std::invalid_argument("sqrt_one_plus: argument must vanish at the expansion point");
    const bool at_infinity = w.support_max() < 0;
    if (at_infinity && w.lo_reliable() > lo_target)
        throw std::out_of_range("sqrt_one_plus: argument not reliable through requested order");
    if (!at_infinity && w.hi_reliable() < hi_target)
        throw std::out_of_range("sqrt_one_plus: argument not reliable through requested order");

    Series<R> wm(w.zero_coeff());  // w^m, starting from m = 0
    wm.set(0, unit_like(w.zero_coeff()));
    for (int m = 0;; ++m) {
        if (m > 512) throw std::runtime_error("sqrt_one_plus: truncation runaway");
        out += wm.scaled(binom_half(m));
        // Once w^{m+1} lies wholly outside the target window, stop.
        if (at_infinity) {
            if (w.support_max() * (m + 1) < lo_target) break;
        } else {
            if (w.support_min() * (m + 1) > hi_target) break;
        }
        wm *= w;
    }
    out.restrict_window(lo_target, hi_target);
    return out;
}

}  // namespace strata

#include "strata/laurent.hpp"

#include <cmath>
#include <sstream>

namespace strata {

BiPoly radical_generator(RadGen gen) {
    if (gen == RadGen::uv_disc) {
        BiPoly g(Vars::uv);
        g.add_term(0, 2, Rational(1));
        g.add_term(1, 0, Rational(-4));
        return g;
    }
    BiPoly g(Vars::xs);
    g.add_term(2, 0, Rational(1));
    g.add_term(0, 2, Rational(1));
    g.add_term(0, 0, Rational(-1));
    return g;
}

Vars radical_vars(RadGen gen) { return gen == RadGen::uv_disc ? Vars::uv : Vars::xs; }

RadicalPoly RadicalPoly::from_poly(RadGen gen, const BiPoly& p, int half_power) {
    if (p.vars() != radical_vars(gen))
        throw std::invalid_argument("RadicalPoly: variable pair does not match generator");
    RadicalPoly out(gen);
    out.set_part(half_power, p);
    return out;
}

void RadicalPoly::set_part(int k, BiPoly p) {
    if (p.is_zero())
        parts_.erase(k);
    else
        parts_[k] = std::move(p);
}

BiPoly RadicalPoly::part(int half_power) const {
    auto it = parts_.find(half_power);
    return it == parts_.end() ? BiPoly(vars()) : it->second;
}

bool RadicalPoly::is_zero() const {
    if (parts_.empty()) return true;
    // Merge each parity class onto its lowest half-power and test the sum.
    BiPoly g = radical_generator(gen_);
    for (int parity : {0, 1}) {
        int lowest = 0;
        bool seen = false;
        for (const auto& [k, p] : parts_)
            if (((k % 2) + 2) % 2 == parity && !seen) {
                lowest = k;
                seen = true;
            }
        if (!seen) continue;
        BiPoly sum(vars());
        for (const auto& [k, p] : parts_) {
            if (((k % 2) + 2) % 2 != parity) continue;
            sum += p * g.pow((k - lowest) / 2);
        }
        if (!sum.is_zero()) return false;
    }
    return true;
}

RadicalPoly& RadicalPoly::operator+=(const RadicalPoly& o) {
    if (gen_ != o.gen_) throw std::invalid_argument("RadicalPoly: generator mismatch");
    for (const auto& [k, p] : o.parts_) {
        auto it = parts_.find(k);
        if (it == parts_.end()) {
            parts_[k] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) parts_.erase(it);
        }
    }
    return *this;
}

RadicalPoly& RadicalPoly::operator-=(const RadicalPoly& o) { return *this += -o; }

RadicalPoly& RadicalPoly::operator*=(const RadicalPoly& o) {
    if (gen_ != o.gen_) throw std::invalid_argument("RadicalPoly: generator mismatch");
    RadicalPoly out(gen_);
    for (const auto& [ka, pa] : parts_)
        for (const auto& [kb, pb] : o.parts_) {
            BiPoly prod = pa * pb;
            int k = ka + kb;
            auto it = out.parts_.find(k);
            if (it == out.parts_.end()) {
                if (!prod.is_zero()) out.parts_[k] = std::move(prod);
            } else {
                it->second += prod;
                if (it->second.is_zero()) out.parts_.erase(it);
            }
        }
    out.normalize();
    *this = std::move(out);
    return *this;
}

RadicalPoly& RadicalPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        parts_.clear();
        return *this;
    }
    for (auto& [k, p] : parts_) p *= c;
    return *this;
}

RadicalPoly RadicalPoly::operator-() const {
    RadicalPoly out = *this;
    for (auto& [k, p] : out.parts_) p = -p;
    return out;
}

RadicalPoly RadicalPoly::diff(int which) const {
    BiPoly gp = radical_generator(gen_).diff(which);
    RadicalPoly out(gen_);
    for (const auto& [k, p] : parts_) {
        RadicalPoly term = from_poly(gen_, p.diff(which), k);
        if (k != 0) term += from_poly(gen_, p * gp * Rational(k, 2), k - 2);
        out += term;
    }
    out.normalize();
    return out;
}

void RadicalPoly::normalize() {
    BiPoly g = radical_generator(gen_);
    std::map<int, BiPoly> fresh;
    auto deposit = [&](int k, const BiPoly& p) {
        if (p.is_zero()) return;
        auto it = fresh.find(k);
        if (it == fresh.end())
            fresh[k] = p;
        else {
            it->second += p;
            if (it->second.is_zero()) fresh.erase(it);
        }
    };
    for (const auto& [k, p] : parts_) {
        if (k >= 2) {
            deposit(k % 2, p * g.pow(k / 2));
        } else if (k < 0) {
            // Lift by exact division where the coefficient allows it.
            BiPoly rest = p;
            int kk = k;
            while (kk < 0) {
                BiPoly q;
                if (!BiPoly::try_div_exact(rest, g, &q)) break;
                rest = std::move(q);
                kk += 2;
            }
            deposit(kk, rest);
        } else {
            deposit(k, p);
        }
    }
    parts_ = std::move(fresh);
}

std::complex<double> RadicalPoly::eval_complex(double x, double y) const {
    double g = radical_generator(gen_).eval_d(x, y);
    std::complex<double> s = std::sqrt(std::complex<double>(g, 0.0));
    std::complex<double> out(0.0, 0.0);
    for (const auto& [k, p] : parts_) out += p.eval_d(x, y) * std::pow(s, k);
    return out;
}

double RadicalPoly::eval_d(double x, double y) const {
    double g = radical_generator(gen_).eval_d(x, y);
    if (g <= 0) throw std::domain_error("RadicalPoly::eval_d: generator not positive");
    double s = std::sqrt(g);
    double out = 0;
    for (const auto& [k, p] : parts_) out += p.eval_d(x, y) * std::pow(s, k);
    return out;
}

std::string RadicalPoly::str() const {
    if (parts_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, p] : parts_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << p.str() << ")";
        if (k != 0) os << "*g^(" << k << "/2)";
    }
    return os.str();
}

Rational binom_half(int m) {
    // C(1/2, m) = prod_{i=0}^{m-1} (1/2 - i) / m!
    Rational out(1);
    for (int i = 0; i < m; ++i) out *= Rational(1 - 2 * i, 2 * (i + 1));
    return out;
}

}  // namespace strata

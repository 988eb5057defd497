#include "strata/bipoly.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace strata {

const char* var_name(Vars vars, int which) {
    if (vars == Vars::xs) return which == 1 ? "xi" : "sigma";
    return which == 1 ? "u" : "v";
}

const char* to_string(Vars vars) { return vars == Vars::xs ? "xs" : "uv"; }

Vars vars_from_string(const std::string& s) {
    if (s == "xs" || s == "xi-sigma") return Vars::xs;
    if (s == "uv") return Vars::uv;
    throw std::invalid_argument("unknown variable pair: " + s);
}

void require_same_vars(const BiPoly& a, const BiPoly& b, const char* where) {
    if (a.vars() != b.vars())
        throw std::invalid_argument(std::string(where) + ": variable-pair mismatch");
}

BiPoly BiPoly::constant(Vars vars, const Rational& c) {
    BiPoly p(vars);
    p.add_term(0, 0, c);
    return p;
}

BiPoly BiPoly::mono(Vars vars, int a, int b, const Rational& c) {
    BiPoly p(vars);
    p.add_term(a, b, c);
    return p;
}

void BiPoly::add_term(int a, int b, const Rational& c) {
    if (c.is_zero()) return;
    if (a < 0 || b < 0) throw std::invalid_argument("BiPoly: negative exponent");
    Exp2 e{a, b};
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

bool BiPoly::is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first == Exp2{0, 0});
}

int BiPoly::total_degree() const {
    if (t_.empty()) return -1;
    return t_.rbegin()->first.a + t_.rbegin()->first.b;
}

int BiPoly::degree(int which) const {
    int d = -1;
    for (const auto& [e, c] : t_) d = std::max(d, which == 1 ? e.a : e.b);
    return d;
}

Rational BiPoly::coeff(int a, int b) const {
    auto it = t_.find(Exp2{a, b});
    return it == t_.end() ? Rational(0) : it->second;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    require_same_vars(*this, o, "BiPoly::operator+");
    for (const auto& [e, c] : o.t_) add_term(e.a, e.b, c);
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    require_same_vars(*this, o, "BiPoly::operator-");
    for (const auto& [e, c] : o.t_) add_term(e.a, e.b, -c);
    return *this;
}

BiPoly& BiPoly::operator*=(const BiPoly& o) {
    require_same_vars(*this, o, "BiPoly::operator*");
    BiPoly out(vars_);
    for (const auto& [ea, ca] : t_)
        for (const auto& [eb, cb] : o.t_) out.add_term(ea.a + eb.a, ea.b + eb.b, ca * cb);
    *this = std::move(out);
    return *this;
}

BiPoly& BiPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [e, v] : t_) v *= c;
    return *this;
}

BiPoly BiPoly::operator-() const {
    BiPoly out(*this);
    for (auto& [e, v] : out.t_) v = -v;
    return out;
}

BiPoly BiPoly::pow(int n) const {
    if (n < 0) throw std::invalid_argument("BiPoly::pow: negative exponent");
    BiPoly out = constant(vars_, Rational(1));
    BiPoly base = *this;
    while (n > 0) {
        if (n & 1) out *= base;
        if (n >>= 1) base *= base;
    }
    return out;
}

BiPoly BiPoly::diff(int which, int order) const {
    BiPoly out = *this;
    for (int k = 0; k < order; ++k) {
        BiPoly next(vars_);
        for (const auto& [e, c] : out.t_) {
            if (which == 1 && e.a > 0) next.add_term(e.a - 1, e.b, c * Rational(e.a));
            if (which == 2 && e.b > 0) next.add_term(e.a, e.b - 1, c * Rational(e.b));
        }
        out = std::move(next);
    }
    return out;
}

BiPoly BiPoly::substitute(const BiPoly& x1, const BiPoly& x2) const {
    require_same_vars(x1, x2, "BiPoly::substitute");
    BiPoly out(x1.vars());
    // Cache powers; exponents are small in practice.
    std::vector<BiPoly> p1{BiPoly::constant(x1.vars(), Rational(1))};
    std::vector<BiPoly> p2{BiPoly::constant(x1.vars(), Rational(1))};
    auto pw = [](std::vector<BiPoly>& cache, const BiPoly& base, int n) -> const BiPoly& {
        while (static_cast<int>(cache.size()) <= n) cache.push_back(cache.back() * base);
        return cache[n];
    };
    for (const auto& [e, c] : t_) out += pw(p1, x1, e.a) * pw(p2, x2, e.b) * c;
    return out;
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
    Rational out(0);
    for (const auto& [e, c] : t_) out += c * x.pow(e.a) * y.pow(e.b);
    return out;
}

double BiPoly::eval_d(double x, double y) const { return PolyEval(*this)(x, y); }

bool BiPoly::try_div_exact(const BiPoly& num, const BiPoly& den, BiPoly* quot) {
    require_same_vars(num, den, "BiPoly::div_exact");
    if (den.is_zero()) throw std::domain_error("BiPoly::div_exact: division by zero");
    BiPoly rem = num;
    BiPoly q(num.vars());
    const auto& lead = *den.t_.rbegin();  // greatest term under the monomial order
    while (!rem.is_zero()) {
        const auto& rl = *rem.t_.rbegin();
        int da = rl.first.a - lead.first.a;
        int db = rl.first.b - lead.first.b;
        if (da < 0 || db < 0) return false;
        Rational c = rl.second / lead.second;
        q.add_term(da, db, c);
        rem -= den * mono(num.vars(), da, db, c);
    }
    if (quot) *quot = std::move(q);
    return true;
}

BiPoly BiPoly::div_exact(const BiPoly& divisor) const {
    BiPoly q;
    if (!try_div_exact(*this, divisor, &q))
        throw std::domain_error("BiPoly::div_exact: not exactly divisible");
    return q;
}

Rational BiPoly::content() const {
    // gcd of numerators / lcm-compatible treatment via mpq gcd on the raw values.
    if (t_.empty()) return Rational(0);
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : t_) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.raw().get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.raw().get_den().get_mpz_t());
    }
    Rational out(mpq_class(num_gcd) / mpq_class(den_lcm));
    return t_.rbegin()->second.sign() < 0 ? -out : out;
}

Exp2 BiPoly::monomial_gcd() const {
    if (t_.empty()) return Exp2{0, 0};
    int a = t_.begin()->first.a, b = t_.begin()->first.b;
    for (const auto& [e, c] : t_) {
        a = std::min(a, e.a);
        b = std::min(b, e.b);
        if (a == 0 && b == 0) break;
    }
    return Exp2{a, b};
}

BiPoly BiPoly::shift_down(const Exp2& e) const {
    BiPoly out(vars_);
    for (const auto& [m, c] : t_) out.add_term(m.a - e.a, m.b - e.b, c);
    return out;
}

std::string BiPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : t_) {
        Rational cc = c;
        if (!first) {
            os << (cc.sign() < 0 ? " - " : " + ");
            if (cc.sign() < 0) cc = -cc;
        }
        first = false;
        bool has_vars = e.a > 0 || e.b > 0;
        if (!has_vars || cc != Rational(1)) os << cc.str();
        if (has_vars && cc != Rational(1)) os << "*";
        if (e.a > 0) {
            os << var_name(vars_, 1);
            if (e.a > 1) os << "^" << e.a;
            if (e.b > 0) os << "*";
        }
        if (e.b > 0) {
            os << var_name(vars_, 2);
            if (e.b > 1) os << "^" << e.b;
        }
    }
    return os.str();
}

PolyEval::PolyEval(const BiPoly& p) {
    da_ = std::max(0, p.degree(1));
    db_ = std::max(0, p.degree(2));
    c_.assign(static_cast<size_t>(da_ + 1) * (db_ + 1), 0.0);
    for (const auto& [e, c] : p.terms()) c_[static_cast<size_t>(e.a) * (db_ + 1) + e.b] = c.to_double();
}

double PolyEval::operator()(double x, double y) const {
    if (c_.empty()) return 0.0;
    double out = 0.0;
    for (int a = da_; a >= 0; --a) {
        const double* row = &c_[static_cast<size_t>(a) * (db_ + 1)];
        double ry = 0.0;
        for (int b = db_; b >= 0; --b) ry = ry * y + row[b];
        out = out * x + ry;
    }
    return out;
}

RatBi::RatBi(const BiPoly& n, const BiPoly& d) : num_(n), den_(d) {
    require_same_vars(n, d, "RatBi");
    if (d.is_zero()) throw std::domain_error("RatBi: zero denominator");
    normalize();
}

void RatBi::normalize() {
    if (num_.is_zero()) {
        den_ = BiPoly::constant(num_.vars(), Rational(1));
        return;
    }
    Exp2 gn = num_.monomial_gcd(), gd = den_.monomial_gcd();
    Exp2 g{std::min(gn.a, gd.a), std::min(gn.b, gd.b)};
    if (g.a > 0 || g.b > 0) {
        num_ = num_.shift_down(g);
        den_ = den_.shift_down(g);
    }
    BiPoly q;
    if (BiPoly::try_div_exact(num_, den_, &q)) {
        num_ = std::move(q);
        den_ = BiPoly::constant(num_.vars(), Rational(1));
        return;
    }
    Rational cn = num_.content(), cd = den_.content();
    Rational scale = cn / cd;
    num_ *= Rational(1) / cn;
    den_ *= Rational(1) / cd;
    num_ *= scale;
}

BiPoly RatBi::as_poly() const {
    if (!is_polynomial()) throw std::domain_error("RatBi::as_poly: non-trivial denominator");
    BiPoly out = num_;
    out *= Rational(1) / den_.constant_term();
    return out;
}

RatBi& RatBi::operator+=(const RatBi& o) {
    require_same_vars(num_, o.num_, "RatBi::operator+");
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
}

RatBi& RatBi::operator-=(const RatBi& o) { return *this += -o; }

RatBi& RatBi::operator*=(const RatBi& o) {
    require_same_vars(num_, o.num_, "RatBi::operator*");
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
}

RatBi& RatBi::operator/=(const RatBi& o) {
    if (o.is_zero()) throw std::domain_error("RatBi: division by zero");
    num_ *= o.den_;
    den_ *= o.num_;
    normalize();
    return *this;
}

RatBi& RatBi::operator*=(const Rational& c) {
    num_ *= c;
    if (c.is_zero()) normalize();
    return *this;
}

RatBi RatBi::operator-() const {
    RatBi out = *this;
    out.num_ = -out.num_;
    return out;
}

RatBi RatBi::diff(int which) const {
    BiPoly n = num_.diff(which) * den_ - num_ * den_.diff(which);
    return RatBi(n, den_ * den_);
}

Rational RatBi::eval(const Rational& x, const Rational& y) const {
    Rational d = den_.eval(x, y);
    if (d.is_zero()) throw std::domain_error("RatBi::eval: pole");
    return num_.eval(x, y) / d;
}

double RatBi::eval_d(double x, double y) const { return num_.eval_d(x, y) / den_.eval_d(x, y); }

std::string RatBi::str() const {
    if (is_polynomial()) return as_poly().str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
}

}  // namespace strata

#include "strata/jet.hpp"

#include <sstream>

namespace strata {

JetExpr JetExpr::constant(Vars vars, const Rational& c) {
    JetExpr e(vars);
    e.add_term(JetMono{}, c);
    return e;
}

JetExpr JetExpr::field(Vars vars, int which, int power) {
    JetExpr e(vars);
    JetMono m;
    (which == 1 ? m.e1 : m.e2) = power;
    e.add_term(m, Rational(1));
    return e;
}

JetExpr JetExpr::deriv(Vars vars, int which, int power) {
    if (power < 0) throw std::invalid_argument("JetExpr::deriv: negative power");
    JetExpr e(vars);
    JetMono m;
    (which == 1 ? m.d1 : m.d2) = power;
    e.add_term(m, Rational(1));
    return e;
}

JetExpr JetExpr::log_field1(Vars vars, int power) {
    if (power < 0) throw std::invalid_argument("JetExpr::log_field1: negative power");
    JetExpr e(vars);
    JetMono m;
    m.lg = power;
    e.add_term(m, Rational(1));
    return e;
}

JetExpr JetExpr::from_bipoly(const BiPoly& p) {
    JetExpr e(p.vars());
    for (const auto& [ex, c] : p.terms()) {
        JetMono m;
        m.e1 = ex.a;
        m.e2 = ex.b;
        e.add_term(m, c);
    }
    return e;
}

void JetExpr::add_term(const JetMono& m, const Rational& c) {
    if (c.is_zero()) return;
    if (m.d1 < 0 || m.d2 < 0 || m.dd1 < 0 || m.dd2 < 0 || m.lg < 0)
        throw std::invalid_argument("JetExpr: negative jet or log power");
    auto it = t_.find(m);
    if (it == t_.end()) {
        t_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

int JetExpr::jet_order() const {
    int order = 0;
    for (const auto& [m, c] : t_) {
        if (m.dd1 > 0 || m.dd2 > 0) return 2;
        if (m.d1 > 0 || m.d2 > 0) order = 1;
    }
    return order;
}

JetExpr& JetExpr::operator+=(const JetExpr& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("JetExpr: variable-pair mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
}

JetExpr& JetExpr::operator-=(const JetExpr& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("JetExpr: variable-pair mismatch");
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
}

JetExpr& JetExpr::operator*=(const JetExpr& o) {
    if (vars_ != o.vars_) throw std::invalid_argument("JetExpr: variable-pair mismatch");
    JetExpr out(vars_);
    for (const auto& [ma, ca] : t_)
        for (const auto& [mb, cb] : o.t_) {
            JetMono m{ma.e1 + mb.e1, ma.e2 + mb.e2, ma.d1 + mb.d1, ma.d2 + mb.d2,
                      ma.dd1 + mb.dd1, ma.dd2 + mb.dd2, ma.lg + mb.lg};
            out.add_term(m, ca * cb);
        }
    *this = std::move(out);
    return *this;
}

JetExpr& JetExpr::operator*=(const Rational& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

JetExpr JetExpr::operator-() const {
    JetExpr out = *this;
    for (auto& [m, v] : out.t_) v = -v;
    return out;
}

JetExpr JetExpr::dx() const {
    JetExpr out(vars_);
    for (const auto& [m, c] : t_) {
        if (m.dd1 > 0 || m.dd2 > 0)
            throw std::domain_error("JetExpr::dx: third jets are outside the ring");
        // w1^e1 -> e1 w1^{e1-1} w1_x, etc.; log(w1)^lg -> lg log^{lg-1} w1_x / w1.
        if (m.e1 != 0) {
            JetMono n = m;
            n.e1 -= 1;
            n.d1 += 1;
            out.add_term(n, c * Rational(m.e1));
        }
        if (m.e2 != 0) {
            JetMono n = m;
            n.e2 -= 1;
            n.d2 += 1;
            out.add_term(n, c * Rational(m.e2));
        }
        if (m.d1 > 0) {
            JetMono n = m;
            n.d1 -= 1;
            n.dd1 += 1;
            out.add_term(n, c * Rational(m.d1));
        }
        if (m.d2 > 0) {
            JetMono n = m;
            n.d2 -= 1;
            n.dd2 += 1;
            out.add_term(n, c * Rational(m.d2));
        }
        if (m.lg > 0) {
            JetMono n = m;
            n.lg -= 1;
            n.e1 -= 1;
            n.d1 += 1;
            out.add_term(n, c * Rational(m.lg));
        }
    }
    return out;
}

JetExpr JetExpr::d_field(int which) const {
    JetExpr out(vars_);
    for (const auto& [m, c] : t_) {
        int e = which == 1 ? m.e1 : m.e2;
        if (e != 0) {
            JetMono n = m;
            (which == 1 ? n.e1 : n.e2) -= 1;
            out.add_term(n, c * Rational(e));
        }
        if (which == 1 && m.lg > 0) {
            JetMono n = m;
            n.lg -= 1;
            n.e1 -= 1;
            out.add_term(n, c * Rational(m.lg));
        }
    }
    return out;
}

JetExpr JetExpr::d_deriv(int which) const {
    JetExpr out(vars_);
    for (const auto& [m, c] : t_) {
        int d = which == 1 ? m.d1 : m.d2;
        if (d > 0) {
            JetMono n = m;
            (which == 1 ? n.d1 : n.d2) -= 1;
            out.add_term(n, c * Rational(d));
        }
    }
    return out;
}

std::pair<JetExpr, JetExpr> JetExpr::euler() const {
    return {d_field(1) - d_deriv(1).dx(), d_field(2) - d_deriv(2).dx()};
}

std::string JetExpr::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    const char* n1 = var_name(vars_, 1);
    const char* n2 = var_name(vars_, 2);
    bool first = true;
    for (const auto& [m, c] : t_) {
        Rational cc = c;
        if (!first) {
            os << (cc.sign() < 0 ? " - " : " + ");
            if (cc.sign() < 0) cc = -cc;
        }
        first = false;
        os << cc.str();
        auto put = [&](const char* base, const char* suffix, int p) {
            if (p == 0) return;
            os << "*" << base << suffix;
            if (p != 1) os << "^" << p;
        };
        put(n1, "", m.e1);
        put(n2, "", m.e2);
        put(n1, "_x", m.d1);
        put(n2, "_x", m.d2);
        put(n1, "_xx", m.dd1);
        put(n2, "_xx", m.dd2);
        if (m.lg > 0) {
            os << "*log(" << n1 << ")";
            if (m.lg != 1) os << "^" << m.lg;
        }
    }
    return os.str();
}

}  // namespace strata

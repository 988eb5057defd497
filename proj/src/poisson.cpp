#include "strata/poisson.hpp"

namespace strata {

namespace {

RatBi rb(const BiPoly& p) { return RatBi(p); }

BiPoly mono_uv(int a, int b, const Rational& c) { return BiPoly::mono(Vars::uv, a, b, c); }

RatBi subst_ratbi(const RatBi& f, const std::pair<BiPoly, BiPoly>& map) {
    return RatBi(f.num().substitute(map.first, map.second),
                 f.den().substitute(map.first, map.second));
}

}  // namespace

OpEntry OpEntry::symm(const RatBi& g) {
    // g d + d g = 2g d + g_1 w1_x + g_2 w2_x
    return OpEntry(g * Rational(2), g.diff(1), g.diff(2));
}

OpEntry OpEntry::adv(const RatBi& a) {
    Vars vars = a.vars();
    return OpEntry(a, RatBi::constant(vars, Rational(0)), RatBi::constant(vars, Rational(0)));
}

OpEntry& OpEntry::operator+=(const OpEntry& o) {
    a += o.a;
    b1 += o.b1;
    b2 += o.b2;
    return *this;
}

OpEntry OpEntry::scaled(const Rational& c) const { return OpEntry(a * c, b1 * c, b2 * c); }

OpEntry OpEntry::compose_mult(const RatBi& m) const {
    return OpEntry(a * m, a * m.diff(1) + b1 * m, a * m.diff(2) + b2 * m);
}

OpEntry OpEntry::premult(const RatBi& m) const { return OpEntry(m * a, m * b1, m * b2); }

JetExpr GradFlow::to_jet() const {
    Vars vars = c1.vars();
    JetExpr out(vars);
    out += JetExpr::from_bipoly(c1.as_poly()) * JetExpr::deriv(vars, 1);
    out += JetExpr::from_bipoly(c2.as_poly()) * JetExpr::deriv(vars, 2);
    return out;
}

bool PoissonOperator::is_skew() const {
    const Rational half(1, 2);
    for (int i = 0; i < 2; ++i) {
        const OpEntry& d = e[i][i];
        if (!(d.b1 == d.a.diff(1) * half && d.b2 == d.a.diff(2) * half)) return false;
    }
    const OpEntry& p = e[0][1];
    const OpEntry& q = e[1][0];
    if (!(p.a == q.a)) return false;
    if (!(p.b1 + q.b1 == p.a.diff(1))) return false;
    if (!(p.b2 + q.b2 == p.a.diff(2))) return false;
    return true;
}

PoissonOperator PoissonOperator::scaled(const Rational& c) const {
    PoissonOperator out = *this;
    for (auto& row : out.e)
        for (auto& entry : row) entry = entry.scaled(c);
    return out;
}

PoissonOperator operator+(const PoissonOperator& x, const PoissonOperator& y) {
    if (x.vars != y.vars) throw std::invalid_argument("PoissonOperator: variable-pair mismatch");
    PoissonOperator out = x;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.e[i][j] += y.e[i][j];
    return out;
}

PoissonOperator operator-(const PoissonOperator& x, const PoissonOperator& y) {
    return x + y.scaled(Rational(-1));
}

PoissonOperator poisson_p0() {
    PoissonOperator P;
    P.vars = Vars::uv;
    RatBi zero = RatBi::constant(Vars::uv, Rational(0));
    RatBi one = RatBi::constant(Vars::uv, Rational(1));
    P.e[0][0] = OpEntry(zero, zero, zero);
    P.e[1][1] = OpEntry(zero, zero, zero);
    P.e[0][1] = OpEntry::adv(one);
    P.e[1][0] = OpEntry::adv(one);
    return P;
}

PoissonOperator poisson_p1() {
    PoissonOperator P;
    P.vars = Vars::uv;
    RatBi zero = RatBi::constant(Vars::uv, Rational(0));
    RatBi u = rb(mono_uv(1, 0, Rational(1)));
    RatBi v = rb(mono_uv(0, 1, Rational(1)));
    // u d + d u
    P.e[0][0] = OpEntry::symm(u);
    // v d
    P.e[0][1] = OpEntry::adv(v);
    // d v = v d + v_x
    P.e[1][0] = OpEntry(v, zero, RatBi::constant(Vars::uv, Rational(1)));
    // 2 d
    P.e[1][1] = OpEntry::adv(RatBi::constant(Vars::uv, Rational(2)));
    return P;
}

PoissonOperator poisson_p2() {
    PoissonOperator P;
    P.vars = Vars::uv;
    RatBi zero = RatBi::constant(Vars::uv, Rational(0));
    RatBi u = rb(mono_uv(1, 0, Rational(1)));
    RatBi v = rb(mono_uv(0, 1, Rational(1)));
    RatBi uv = rb(mono_uv(1, 1, Rational(1)));
    RatBi v2 = rb(mono_uv(0, 2, Rational(1)));
    // 2(uv d + d uv)
    P.e[0][0] = OpEntry::symm(uv * Rational(2));
    // 2(u d + d u) + v^2 d
    P.e[0][1] = OpEntry::symm(u * Rational(2)) + OpEntry::adv(v2);
    // 2(u d + d u) + d v^2
    P.e[1][0] = OpEntry::symm(u * Rational(2)) + OpEntry(v2, zero, v * Rational(2));
    // 2(v d + d v)
    P.e[1][1] = OpEntry::symm(v * Rational(2));
    return P;
}

PoissonOperator darboux_xs() {
    PoissonOperator P;
    P.vars = Vars::xs;
    RatBi zero = RatBi::constant(Vars::xs, Rational(0));
    RatBi mone = RatBi::constant(Vars::xs, Rational(-1));
    P.e[0][0] = OpEntry(zero, zero, zero);
    P.e[1][1] = OpEntry(zero, zero, zero);
    P.e[0][1] = OpEntry::adv(mone);
    P.e[1][0] = OpEntry::adv(mone);
    return P;
}

std::array<GradFlow, 2> apply_poisson(const PoissonOperator& P, const RatBi& g1, const RatBi& g2) {
    if (g1.vars() != P.vars || g2.vars() != P.vars)
        throw std::invalid_argument("apply_poisson: variable-pair mismatch");
    std::array<RatBi, 2> g{g1, g2};
    std::array<GradFlow, 2> out;
    for (int i = 0; i < 2; ++i) {
        RatBi c1 = RatBi::constant(P.vars, Rational(0));
        RatBi c2 = c1;
        for (int j = 0; j < 2; ++j) {
            const OpEntry& op = P.e[i][j];
            c1 += op.a * g[j].diff(1) + op.b1 * g[j];
            c2 += op.a * g[j].diff(2) + op.b2 * g[j];
        }
        out[i] = GradFlow{c1, c2};
    }
    return out;
}

Mat2 Mat2::transpose() const {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.m[i][j] = m[j][i];
    return out;
}

RatBi Mat2::det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

Mat2 Mat2::inverse() const {
    RatBi d = det();
    if (d.is_zero()) throw std::domain_error("Mat2::inverse: singular matrix");
    Mat2 out;
    out.m[0][0] = m[1][1] / d;
    out.m[0][1] = -m[0][1] / d;
    out.m[1][0] = -m[1][0] / d;
    out.m[1][1] = m[0][0] / d;
    return out;
}

std::pair<BiPoly, BiPoly> cov_map() {
    BiPoly xi = BiPoly::var1(Vars::xs), sg = BiPoly::var2(Vars::xs);
    BiPoly one = BiPoly::constant(Vars::xs, Rational(1));
    BiPoly u = (one - xi * xi) * (one - sg * sg);
    BiPoly v = BiPoly::mono(Vars::xs, 1, 1, Rational(2));
    return {u, v};
}

Mat2 cov_jacobian() {
    auto [u, v] = cov_map();
    Mat2 J;
    J.m[0][0] = RatBi(u.diff(1));
    J.m[0][1] = RatBi(u.diff(2));
    J.m[1][0] = RatBi(v.diff(1));
    J.m[1][1] = RatBi(v.diff(2));
    return J;
}

PoissonOperator substitute_operator(const PoissonOperator& P, const Mat2& jac,
                                    const std::pair<BiPoly, BiPoly>& to_old, Vars new_vars) {
    PoissonOperator out;
    out.vars = new_vars;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const OpEntry& op = P.e[i][j];
            RatBi a = subst_ratbi(op.a, to_old);
            RatBi b1 = subst_ratbi(op.b1, to_old);
            RatBi b2 = subst_ratbi(op.b2, to_old);
            // Old jets in terms of new ones: w_old_x = sum_k jac[old][k] w_new_k_x.
            out.e[i][j] = OpEntry(a, b1 * jac.m[0][0] + b2 * jac.m[1][0],
                                  b1 * jac.m[0][1] + b2 * jac.m[1][1]);
        }
    return out;
}

PoissonOperator conjugate(const Mat2& M, const PoissonOperator& P) {
    PoissonOperator out;
    out.vars = P.vars;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            OpEntry sum;
            RatBi zero = RatBi::constant(P.vars, Rational(0));
            sum = OpEntry(zero, zero, zero);
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l)
                    sum += P.e[k][l].compose_mult(M.m[j][l]).premult(M.m[i][k]);
            out.e[i][j] = sum;
        }
    return out;
}

PoissonOperator pull_to_xs(const PoissonOperator& P_uv) {
    if (P_uv.vars != Vars::uv) throw std::invalid_argument("pull_to_xs: expected (u,v) operator");
    Mat2 J = cov_jacobian();
    PoissonOperator rewritten = substitute_operator(P_uv, J, cov_map(), Vars::xs);
    return conjugate(J.inverse(), rewritten);
}

PoissonOperator push_darboux_like(const PoissonOperator& P_xs) {
    if (P_xs.vars != Vars::xs)
        throw std::invalid_argument("push_darboux_like: expected (xi,sigma) operator");
    return conjugate(cov_jacobian(), P_xs);
}

}  // namespace strata

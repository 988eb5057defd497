#include "strata/conserved.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

Family family_from_string(const std::string& s) {
    if (s == "poly") return Family::poly;
    if (s == "alg") return Family::alg;
    if (s == "toda") return Family::toda;
    throw std::invalid_argument("unknown family: " + s);
}

const char* to_string(Family f) {
    switch (f) {
        case Family::poly: return "poly";
        case Family::alg: return "alg";
        default: return "toda";
    }
}

double ConservedDensity::eval_poly(double x, double y, double r) const {
    double out = f0.eval_d(x, y);
    if (deformed) out += r * f1.eval_d(x, y);
    return out;
}

std::complex<double> ConservedDensity::eval_alg(double x, double y) const {
    return rad.eval_complex(x, y);
}

double ConservedDensity::eval_toda(double x, double y) const {
    double arg;
    if (vars == Vars::uv) {
        arg = x;
    } else {
        arg = (1 - x * x) * (1 - y * y);
    }
    if (arg <= 0) throw std::domain_error("toda density: logarithm argument not positive");
    return plain.eval_d(x, y) + log_coeff.eval_d(x, y) * std::log(arg);
}

namespace {

// Coefficients of the spectral radicand lambda^2 + c1 lambda + c0.
void radicand_coeffs(Vars vars, BiPoly* c1, BiPoly* c0) {
    if (vars == Vars::uv) {
        BiPoly u = BiPoly::var1(Vars::uv), v = BiPoly::var2(Vars::uv);
        *c1 = v * Rational(-2);
        *c0 = v * v - u * Rational(4);
    } else {
        BiPoly xi = BiPoly::var1(Vars::xs), sg = BiPoly::var2(Vars::xs);
        BiPoly one = BiPoly::constant(Vars::xs, Rational(1));
        *c1 = BiPoly::mono(Vars::xs, 1, 1, Rational(-4));
        *c0 = (xi * xi + sg * sg - one) * Rational(4);
    }
}

}  // namespace

std::vector<ConservedDensity> generate_polynomial_family(int n, Vars vars) {
    if (n < 1) throw std::invalid_argument("generate_polynomial_family: need n >= 1");
    BiPoly c1, c0;
    radicand_coeffs(vars, &c1, &c0);

    // s = lambda sqrt(1 + w), w = c1/lambda + c0/lambda^2; densities are the
    // low-order coefficients of (lambda - s)/4 at infinity.
    Series<BiPoly> w{BiPoly(vars)};
    w.set(-1, c1);
    w.set(-2, c0);
    Series<BiPoly> s = sqrt_one_plus(w, -n, 0).shifted(1);
    Series<BiPoly> K{BiPoly(vars)};
    K.set(1, BiPoly::constant(vars, Rational(1)));
    K -= s;
    K = K.scaled(Rational(1, 4));  // (lambda - s)/4

    std::vector<ConservedDensity> out;
    out.reserve(n);
    for (int j = 1; j <= n; ++j) {
        ConservedDensity d;
        d.family = Family::poly;
        d.index = j;
        d.vars = vars;
        d.f0 = K.coeff(-(j - 1));
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<Rational> polynomial_family_scale(int n) {
    return std::vector<Rational>(static_cast<size_t>(n), Rational(1));
}

std::vector<ConservedDensity> generate_algebraic_family(int n, Vars vars) {
    if (n < 1) throw std::invalid_argument("generate_algebraic_family: need n >= 1");
    BiPoly c1, c0;
    radicand_coeffs(vars, &c1, &c0);
    RadGen gen = vars == Vars::uv ? RadGen::uv_disc : RadGen::xs_rho;
    BiPoly g = radical_generator(gen);

    // c0 = scale * g exactly; sqrt(c0) = sqrt(scale) * sqrt(g) with integer
    // sqrt(scale) in both variable systems.
    BiPoly scale_poly = c0.div_exact(g);
    if (!scale_poly.is_constant())
        throw std::logic_error("generate_algebraic_family: radicand misaligned with generator");
    Rational scale = scale_poly.constant_term();
    Rational sqrt_scale;
    if (scale == Rational(1))
        sqrt_scale = Rational(1);
    else if (scale == Rational(4))
        sqrt_scale = Rational(2);
    else
        throw std::logic_error("generate_algebraic_family: unexpected radicand scale");

    // z = (c1 lambda + lambda^2)/c0; sqrt(lambda^2 + c1 lambda + c0)
    //   = sqrt(c0) sqrt(1 + z) near lambda = 0.
    Series<RadicalPoly> z{RadicalPoly(gen)};
    Rational inv_scale = Rational(1) / scale;
    z.set(1, RadicalPoly::from_poly(gen, c1 * inv_scale, -2));
    z.set(2, RadicalPoly::from_poly(gen, BiPoly::constant(vars, inv_scale), -2));
    Series<RadicalPoly> sq = sqrt_one_plus(z, 0, n - 1);

    Series<RadicalPoly> sqrt_c0{RadicalPoly(gen)};
    sqrt_c0.set(0, RadicalPoly::from_poly(gen, BiPoly::constant(vars, sqrt_scale), 1));
    Series<RadicalPoly> Q = (sqrt_c0 * sq).scaled(Rational(-1, 4));

    std::vector<ConservedDensity> out;
    out.reserve(n);
    for (int j = 1; j <= n; ++j) {
        ConservedDensity d;
        d.family = Family::alg;
        d.index = j;
        d.vars = vars;
        d.rad = Q.coeff(j - 1);
        d.rad.normalize();
        out.push_back(std::move(d));
    }
    return out;
}

std::vector<ConservedDensity> generate_toda_family(int n, Vars vars) {
    if (n < 1 || n > 4)
        throw std::invalid_argument("generate_toda_family: only indices 1..4 are available");
    auto P = [](std::initializer_list<std::array<int, 2>> exps,
                std::initializer_list<Rational> coeffs) {
        BiPoly p(Vars::uv);
        auto e = exps.begin();
        auto c = coeffs.begin();
        for (; e != exps.end(); ++e, ++c) p.add_term((*e)[0], (*e)[1], *c);
        return p;
    };

    std::vector<BiPoly> plain = {
        P({{1, 0}, {0, 2}}, {Rational(-1), Rational(1, 2)}),
        P({{1, 1}, {0, 3}}, {Rational(1), Rational(1, 6)}),
        P({{1, 2}, {2, 0}, {0, 4}}, {Rational(2), Rational(1, 2), Rational(1, 12)}),
        P({{1, 3}, {0, 5}, {2, 1}}, {Rational(8, 3), Rational(1, 20), Rational(7, 2)}),
    };
    std::vector<BiPoly> logc = {
        P({{1, 0}}, {Rational(1)}),
        P({{1, 1}}, {Rational(1)}),
        P({{1, 2}, {2, 0}}, {Rational(1), Rational(1)}),
        P({{1, 3}, {2, 1}}, {Rational(1), Rational(3)}),
    };

    std::vector<ConservedDensity> out;
    auto [u_of, v_of] = cov_map();
    for (int j = 1; j <= n; ++j) {
        ConservedDensity d;
        d.family = Family::toda;
        d.index = j;
        d.vars = vars;
        if (vars == Vars::uv) {
            d.plain = plain[j - 1];
            d.log_coeff = logc[j - 1];
        } else {
            d.plain = plain[j - 1].substitute(u_of, v_of);
            d.log_coeff = logc[j - 1].substitute(u_of, v_of);
        }
        out.push_back(std::move(d));
    }
    return out;
}

RatBi conservation_residual(const BiPoly& F, const Model& model) {
    if (F.vars() != Vars::xs)
        throw std::invalid_argument("conservation_residual: density must be in (xi,sigma)");
    RatBi Fxx = RatBi(F.diff(1, 2));
    RatBi Fss = RatBi(F.diff(2, 2));
    return Fxx * model.Hss() - model.Hxx() * Fss;
}

std::pair<BiPoly, BiPoly> conservation_residual_o1(const BiPoly& F0, const BiPoly& F1,
                                                   const Model& model) {
    auto H = model.r_series(1);
    BiPoly H0ss = H[0].diff(2, 2), H0xx = H[0].diff(1, 2);
    BiPoly H1ss = H[1].diff(2, 2), H1xx = H[1].diff(1, 2);
    BiPoly F0xx = F0.diff(1, 2), F0ss = F0.diff(2, 2);
    BiPoly F1xx = F1.diff(1, 2), F1ss = F1.diff(2, 2);
    BiPoly r0 = F0xx * H0ss - H0xx * F0ss;
    BiPoly r1 = F1xx * H0ss + F0xx * H1ss - H1xx * F0ss - H0xx * F1ss;
    return {r0, r1};
}

bool is_conserved(const BiPoly& F, const Model& model) {
    return conservation_residual(F, model).is_zero();
}

bool is_conserved_o1(const BiPoly& F0, const BiPoly& F1, const Model& model) {
    auto [r0, r1] = conservation_residual_o1(F0, F1, model);
    return r0.is_zero() && r1.is_zero();
}

std::pair<JetExpr, JetExpr> conservation_euler_residual(const BiPoly& F, const BiPoly& H_poly) {
    require_same_vars(F, H_poly, "conservation_euler_residual");
    JetExpr Hx = JetExpr::from_bipoly(H_poly.diff(1));
    JetExpr Hs = JetExpr::from_bipoly(H_poly.diff(2));
    JetExpr e = JetExpr::from_bipoly(F.diff(1)) * Hs.dx() + JetExpr::from_bipoly(F.diff(2)) * Hx.dx();
    return e.euler();
}

BiPoly involution_residual(const BiPoly& F, const BiPoly& G) {
    require_same_vars(F, G, "involution_residual");
    return F.diff(1, 2) * G.diff(2, 2) - G.diff(1, 2) * F.diff(2, 2);
}

std::pair<BiPoly, BiPoly> involution_residual_o1(const BiPoly& F0, const BiPoly& F1,
                                                 const BiPoly& G0, const BiPoly& G1) {
    BiPoly r0 = involution_residual(F0, G0);
    BiPoly r1 = F1.diff(1, 2) * G0.diff(2, 2) + F0.diff(1, 2) * G1.diff(2, 2) -
                G1.diff(1, 2) * F0.diff(2, 2) - G0.diff(1, 2) * F1.diff(2, 2);
    return {r0, r1};
}

std::pair<JetExpr, JetExpr> apply_poisson_jet(const PoissonOperator& P, const JetExpr& g1,
                                              const JetExpr& g2) {
    if (g1.vars() != P.vars || g2.vars() != P.vars)
        throw std::invalid_argument("apply_poisson_jet: variable-pair mismatch");
    std::array<const JetExpr*, 2> g{&g1, &g2};
    Vars vars = P.vars;
    JetExpr w1x = JetExpr::deriv(vars, 1), w2x = JetExpr::deriv(vars, 2);
    std::array<JetExpr, 2> comp{JetExpr(vars), JetExpr(vars)};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const OpEntry& op = P.e[i][j];
            JetExpr a = JetExpr::from_bipoly(op.a.as_poly());
            JetExpr b = JetExpr::from_bipoly(op.b1.as_poly()) * w1x +
                        JetExpr::from_bipoly(op.b2.as_poly()) * w2x;
            comp[i] += a * g[j]->dx() + b * (*g[j]);
        }
    return {comp[0], comp[1]};
}

JetExpr toda_jet(const ConservedDensity& S) {
    if (S.family != Family::toda || S.vars != Vars::uv)
        throw std::invalid_argument("toda_jet: expects a (u,v) lattice density");
    return JetExpr::from_bipoly(S.plain) +
           JetExpr::from_bipoly(S.log_coeff) * JetExpr::log_field1(Vars::uv);
}

std::pair<JetExpr, JetExpr> toda_gradient(const ConservedDensity& S) {
    JetExpr j = toda_jet(S);
    return {j.d_field(1), j.d_field(2)};
}

}  // namespace strata

#include <doctest.h>

#include <strata/conserved.hpp>
#include <strata/models.hpp>
#include <strata/poisson.hpp>

#include <cmath>
#include <complex>

#include "reference_forms.hpp"

using namespace strata;

namespace {

std::array<RatBi, 2> grad(const BiPoly& K) {
    return {RatBi(K.diff(1)), RatBi(K.diff(2))};
}

}  // namespace

TEST_CASE("polynomial family reproduces the classical densities in physical variables") {
    auto fam = generate_polynomial_family(6, Vars::xs);
    REQUIRE(fam.size() == 6);
    for (int j = 1; j <= 6; ++j) {
        CAPTURE(j);
        CHECK(fam[j - 1].f0 == ref::f0_xs(j));
        CHECK(fam[j - 1].index == j);
    }
}

TEST_CASE("polynomial family reproduces the lattice-variable densities") {
    auto fam = generate_polynomial_family(6, Vars::uv);
    for (int j = 1; j <= 6; ++j) {
        CAPTURE(j);
        CHECK(fam[j - 1].f0 == ref::K_uv(j));
    }
}

TEST_CASE("the two variable systems are linked by the quadratic substitution") {
    auto uv = generate_polynomial_family(8, Vars::uv);
    auto xs = generate_polynomial_family(8, Vars::xs);
    auto scale = polynomial_family_scale(8);
    auto [u_of, v_of] = cov_map();
    for (int j = 1; j <= 8; ++j) {
        CAPTURE(j);
        CHECK(scale[j - 1] == Rational(1));
        BiPoly pushed = uv[j - 1].f0.substitute(u_of, v_of);
        CHECK(pushed == xs[j - 1].f0);
    }
}

TEST_CASE("radical family matches the closed-form expansion coefficients") {
    auto uv = generate_algebraic_family(6, Vars::uv);
    auto xs = generate_algebraic_family(6, Vars::xs);
    for (int j = 1; j <= 6; ++j) {
        CAPTURE(j);
        CHECK(uv[j - 1].rad == ref::alg_uv(j - 1));
        CHECK(xs[j - 1].rad == ref::alg_xs(j - 1));
    }
}

TEST_CASE("log-bearing family written out in physical variables") {
    auto fam = generate_toda_family(4, Vars::xs);
    for (int j = 1; j <= 4; ++j) {
        CAPTURE(j);
        auto want = ref::toda_xs(j);
        CHECK(fam[j - 1].plain == want[0]);
        CHECK(fam[j - 1].log_coeff == want[1]);
    }
    CHECK_THROWS(generate_toda_family(5, Vars::uv));
}

TEST_CASE("every zero-order density is conserved for the symmetric-limit flow") {
    Model m(ModelParams{Rational(0), Scaling::boussinesq, Order::full});
    auto fam = generate_polynomial_family(8, Vars::xs);
    for (const auto& d : fam) {
        CAPTURE(d.index);
        CHECK(is_conserved(d.f0, m));
    }
    // a generic non-member is not
    CHECK_FALSE(is_conserved(ref::XI() * ref::XI() * ref::SG(), m));
}

TEST_CASE("variational route confirms the pointwise conservation identity") {
    auto xi = ref::XI(), sg = ref::SG();
    auto one = ref::C(Vars::xs, 1);
    BiPoly H0 = ref::C(Vars::xs, 1, 4) * ((one - xi * xi) * sg * sg + xi * xi);
    auto fam = generate_polynomial_family(6, Vars::xs);
    for (const auto& d : fam) {
        CAPTURE(d.index);
        auto [r1, r2] = conservation_euler_residual(d.f0, H0);
        CHECK(r1.is_zero());
        CHECK(r2.is_zero());
    }
    auto [b1, b2] = conservation_euler_residual(xi * xi * sg, H0);
    CHECK_FALSE((b1.is_zero() && b2.is_zero()));
}

TEST_CASE("recursion ladder between the compatible operators") {
    auto fam = generate_polynomial_family(8, Vars::uv);
    auto P0 = poisson_p0(), P1 = poisson_p1(), P2 = poisson_p2();
    for (int j = 1; j <= 5; ++j) {
        CAPTURE(j);
        auto gj = grad(fam[j - 1].f0);
        auto gj1 = grad(fam[j].f0);
        auto L = apply_poisson(P1, gj[0], gj[1]);
        auto R = apply_poisson(P0, gj1[0], gj1[1]);
        CHECK(L[0] == R[0]);
        CHECK(L[1] == R[1]);
    }
    // the quadratic operator jumps two rungs at once
    for (int j = 1; j <= 4; ++j) {
        CAPTURE(j);
        auto gj = grad(fam[j - 1].f0);
        auto gj2 = grad(fam[j + 1].f0);
        auto L = apply_poisson(P2, gj[0], gj[1]);
        auto R = apply_poisson(P0, gj2[0], gj2[1]);
        CHECK(L[0] == R[0]);
        CHECK(L[1] == R[1]);
    }
}

TEST_CASE("ladder continues through the log-bearing family") {
    auto toda = generate_toda_family(4, Vars::uv);
    auto P0 = poisson_p0(), P1 = poisson_p1();
    for (int j = 1; j <= 3; ++j) {
        CAPTURE(j);
        auto [a1, a2] = toda_gradient(toda[j - 1]);
        auto [b1, b2] = toda_gradient(toda[j]);
        auto L = apply_poisson_jet(P1, a1, a2);
        auto R = apply_poisson_jet(P0, b1, b2);
        CHECK(L.first == R.first);
        CHECK(L.second == R.second);
    }
}

TEST_CASE("log-bearing densities are conserved along the lattice flow") {
    // S_t = S_u u_t + S_v v_t with u_t = -(uv)_x, v_t = -(v^2/2 + u)_x
    // must be a total x-derivative, i.e. the euler pair of S_t vanishes
    auto toda = generate_toda_family(4, Vars::uv);
    JetExpr u = JetExpr::field(Vars::uv, 1);
    JetExpr v = JetExpr::field(Vars::uv, 2);
    JetExpr ux = JetExpr::deriv(Vars::uv, 1);
    JetExpr vx = JetExpr::deriv(Vars::uv, 2);
    JetExpr minus = JetExpr::constant(Vars::uv, Rational(-1));
    JetExpr ut = minus * (v * ux + u * vx);  // -(uv)_x
    JetExpr vt = minus * (v * vx + ux);      // -(v^2/2 + u)_x
    for (const auto& S : toda) {
        CAPTURE(S.index);
        auto [Su, Sv] = toda_gradient(S);
        JetExpr st = Su * ut + Sv * vt;
        auto [r1, r2] = st.euler();
        CHECK(r1.is_zero());
        CHECK(r2.is_zero());
    }
}

TEST_CASE("first family member and constants are annihilated by the basic operator") {
    auto P0 = poisson_p0();
    auto fam = generate_polynomial_family(1, Vars::uv);
    auto g1 = grad(fam[0].f0);
    auto z = apply_poisson(P0, g1[0], g1[1]);
    CHECK(z[0].is_zero());
    CHECK(z[1].is_zero());
    auto c = apply_poisson(P0, RatBi::constant(Vars::uv, Rational(1)),
                           RatBi::constant(Vars::uv, Rational(0)));
    CHECK(c[0].is_zero());
    CHECK(c[1].is_zero());
}

TEST_CASE("the fourth member generates the lattice evolution") {
    auto fam = generate_polynomial_family(4, Vars::uv);
    BiPoly gm = fam[3].f0 * BiPoly::constant(Vars::uv, Rational(-1));
    auto flow = apply_poisson(poisson_p0(), RatBi(gm.diff(1)), RatBi(gm.diff(2)));
    auto u = ref::UU(), v = ref::VV();
    auto mone = ref::C(Vars::uv, -1);
    // u_t + (uv)_x = 0 and v_t + (v^2/2 + u)_x = 0, written on the jets
    GradFlow w1{RatBi(mone * v), RatBi(mone * u)};
    GradFlow w2{RatBi(mone), RatBi(mone * v)};
    CHECK(flow[0] == w1);
    CHECK(flow[1] == w2);
}

TEST_CASE("all four structure matrices are skew") {
    CHECK(poisson_p0().is_skew());
    CHECK(poisson_p1().is_skew());
    CHECK(poisson_p2().is_skew());
    CHECK(darboux_xs().is_skew());
}

TEST_CASE("pullback of the basic operator to physical variables") {
    auto xi = ref::XI(), sg = ref::SG();
    auto xi2 = xi * xi, sg2 = sg * sg;
    auto one = ref::C(Vars::xs, 1);
    BiPoly d2 = (xi2 - sg2) * (xi2 - sg2);
    auto k = [](long n) { return ref::C(Vars::xs, n); };

    auto P0 = pull_to_xs(poisson_p0());
    CHECK(P0.is_skew());

    RatBi g11(xi * sg * (one - xi2), k(4) * d2);
    RatBi g22(xi * sg * (one - sg2), k(4) * d2);
    RatBi g12(k(2) * xi2 * sg2 - xi2 - sg2, k(8) * d2);
    RatBi z1(k(-1) * xi * sg2, k(4) * d2);  // zeroth parts carry sg xi_x - xi sg_x
    RatBi z2(xi2 * sg, k(4) * d2);

    CHECK(P0.e[0][0] == OpEntry::symm(g11));
    CHECK(P0.e[1][1] == OpEntry::symm(g22));
    OpEntry e01 = OpEntry::symm(g12);
    e01.b1 = e01.b1 + z1;
    e01.b2 = e01.b2 + z2;
    OpEntry e10 = OpEntry::symm(g12);
    e10.b1 = e10.b1 - z1;
    e10.b2 = e10.b2 - z2;
    CHECK(P0.e[0][1] == e01);
    CHECK(P0.e[1][0] == e10);
}

TEST_CASE("pullback of the recursion operator to physical variables") {
    auto xi = ref::XI(), sg = ref::SG();
    auto xi2 = xi * xi, sg2 = sg * sg;
    auto one = ref::C(Vars::xs, 1);
    BiPoly d2 = (xi2 - sg2) * (xi2 - sg2);
    auto k = [](long n) { return ref::C(Vars::xs, n); };

    auto P1 = pull_to_xs(poisson_p1());
    CHECK(P1.is_skew());

    RatBi h11((one - xi2) * (xi2 + sg2), k(4) * d2);
    RatBi h22((one - sg2) * (xi2 + sg2), k(4) * d2);
    RatBi h12(xi * sg * (xi2 + sg2 - k(2)), k(4) * d2);
    RatBi y1(k(-1) * (xi2 + sg2) * sg, k(4) * d2);
    RatBi y2((xi2 + sg2) * xi, k(4) * d2);

    CHECK(P1.e[0][0] == OpEntry::symm(h11));
    CHECK(P1.e[1][1] == OpEntry::symm(h22));
    OpEntry f01 = OpEntry::symm(h12);
    f01.b1 = f01.b1 + y1;
    f01.b2 = f01.b2 + y2;
    OpEntry f10 = OpEntry::symm(h12);
    f10.b1 = f10.b1 - y1;
    f10.b2 = f10.b2 - y2;
    CHECK(P1.e[0][1] == f01);
    CHECK(P1.e[1][0] == f10);
}

TEST_CASE("pushing the canonical structure forward recovers the operator pencil") {
    auto pushed = push_darboux_like(darboux_xs());
    auto combo = poisson_p0().scaled(Rational(4)) - poisson_p2();
    auto expected = substitute_operator(combo, cov_jacobian(), cov_map(), Vars::xs);
    CHECK(pushed == expected);
    CHECK(pushed.is_skew());
}

TEST_CASE("zero-order densities are in involution") {
    auto fam = generate_polynomial_family(8, Vars::xs);
    for (int j = 0; j < 8; ++j)
        for (int kx = j + 1; kx < 8; ++kx) {
            CAPTURE(j + 1);
            CAPTURE(kx + 1);
            CHECK(involution_residual(fam[j].f0, fam[kx].f0).is_zero());
        }
}

TEST_CASE("numeric density evaluation follows the symbolic payloads") {
    const double x = 0.37, y = -0.21;

    auto poly = generate_polynomial_family(4, Vars::xs);
    CHECK(poly[3].eval_poly(x, y, 0.0) == doctest::Approx(poly[3].f0.eval_d(x, y)).epsilon(1e-14));

    auto alg = generate_algebraic_family(4, Vars::xs);
    auto z = alg[2].eval_alg(x, y);
    auto w = alg[2].rad.eval_complex(x, y);
    CHECK(std::abs(z - w) < 1e-14);

    auto toda = generate_toda_family(3, Vars::xs);
    double env = (1 - x * x) * (1 - y * y);
    double expect = toda[2].plain.eval_d(x, y) + toda[2].log_coeff.eval_d(x, y) * std::log(env);
    CHECK(toda[2].eval_toda(x, y) == doctest::Approx(expect).epsilon(1e-14));
}

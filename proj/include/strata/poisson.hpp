#pragma once

#include <array>
#include <utility>

#include "strata/bipoly.hpp"
#include "strata/jet.hpp"

namespace strata {

// One entry of a first-order matrix differential operator:
//   a * d/dx + (b1 * w1_x + b2 * w2_x)   (the zeroth part acts by multiplication)
struct OpEntry {
    RatBi a, b1, b2;
    OpEntry() = default;
    OpEntry(RatBi a_, RatBi b1_, RatBi b2_) : a(std::move(a_)), b1(std::move(b1_)), b2(std::move(b2_)) {}

    // g * d/dx + d/dx * g, the standard symmetric first-order block.
    static OpEntry symm(const RatBi& g);
    // plain a * d/dx
    static OpEntry adv(const RatBi& a);

    OpEntry& operator+=(const OpEntry& o);
    friend OpEntry operator+(OpEntry x, const OpEntry& y) { return x += y; }
    OpEntry scaled(const Rational& c) const;
    // Right-compose with multiplication by m: (a d + b) o m.
    OpEntry compose_mult(const RatBi& m) const;
    // Left-multiply by m: m o (a d + b).
    OpEntry premult(const RatBi& m) const;
    friend bool operator==(const OpEntry& x, const OpEntry& y) {
        return x.a == y.a && x.b1 == y.b1 && x.b2 == y.b2;
    }
    bool is_zero() const { return a.is_zero() && b1.is_zero() && b2.is_zero(); }
};

// Covector-valued expression c1 * w1_x + c2 * w2_x with rational-function
// coefficients; the shape every operator application in this module produces.
struct GradFlow {
    RatBi c1, c2;
    friend bool operator==(const GradFlow& x, const GradFlow& y) {
        return x.c1 == y.c1 && x.c2 == y.c2;
    }
    bool is_zero() const { return c1.is_zero() && c2.is_zero(); }
    bool is_polynomial() const { return c1.is_polynomial() && c2.is_polynomial(); }
    JetExpr to_jet() const;
};

struct PoissonOperator {
    Vars vars = Vars::uv;
    std::array<std::array<OpEntry, 2>, 2> e;

    // Skew-adjointness of the matrix operator:
    //  diagonal blocks must have b = D_x(a)/2; off-diagonal blocks must have
    //  equal symbols and zeroth parts summing to D_x of the shared symbol.
    bool is_skew() const;

    PoissonOperator scaled(const Rational& c) const;
    friend PoissonOperator operator+(const PoissonOperator& x, const PoissonOperator& y);
    friend PoissonOperator operator-(const PoissonOperator& x, const PoissonOperator& y);
    friend bool operator==(const PoissonOperator& x, const PoissonOperator& y) {
        return x.vars == y.vars && x.e == y.e;
    }
};

// The compatible trio on (u, v) and the canonical structure on (xi, sigma).
PoissonOperator poisson_p0();
PoissonOperator poisson_p1();
PoissonOperator poisson_p2();
PoissonOperator darboux_xs();

// Apply to an exact gradient (g1, g2) = (dF/dw1, dF/dw2) of point functions.
std::array<GradFlow, 2> apply_poisson(const PoissonOperator& P, const RatBi& g1, const RatBi& g2);

// 2x2 matrix of multiplication operators, for changes of variables.
struct Mat2 {
    std::array<std::array<RatBi, 2>, 2> m;
    Mat2 transpose() const;
    RatBi det() const;
    Mat2 inverse() const;
};

// Jacobian of the map (xi, sigma) -> (u, v) = ((1-xi^2)(1-sigma^2), 2 xi sigma),
// with entries as functions of (xi, sigma).
Mat2 cov_jacobian();
// The map itself.
std::pair<BiPoly, BiPoly> cov_map();

// Substitute coordinates in an operator: coefficients through the point map,
// jets through the chain rule. `jac` is the Jacobian d(old)/d(new) expressed
// in the new variables, `to_old` the point map new -> old.
PoissonOperator substitute_operator(const PoissonOperator& P, const Mat2& jac,
                                    const std::pair<BiPoly, BiPoly>& to_old, Vars new_vars);

// Conjugation M o P o M^T with a multiplication matrix M.
PoissonOperator conjugate(const Mat2& M, const PoissonOperator& P);

// Pull a (u,v)-operator back to (xi, sigma) along the change of variables;
// push the (xi, sigma) Darboux structure forward to (u, v)-form coordinates
// (the result stays written in (xi, sigma) for exact comparison).
PoissonOperator pull_to_xs(const PoissonOperator& P_uv);
PoissonOperator push_darboux_like(const PoissonOperator& P_xs);

}  // namespace strata

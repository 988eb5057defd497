#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "strata/jet.hpp"
#include "strata/laurent.hpp"
#include "strata/models.hpp"
#include "strata/poisson.hpp"

namespace strata {

enum class Family { poly, alg, toda };

Family family_from_string(const std::string& s);
const char* to_string(Family f);

// One conserved density. Which payload fields are meaningful depends on the
// family: `poly` uses f0 (and f1 once deformed), `alg` uses rad, `toda` uses
// plain + log_coeff * log(arg) with arg = u in (u,v) variables and
// (1-xi^2)(1-sigma^2) in (xi, sigma).
struct ConservedDensity {
    Family family = Family::poly;
    int index = 0;
    Vars vars = Vars::uv;

    BiPoly f0;
    BiPoly f1;
    bool deformed = false;

    RadicalPoly rad;

    BiPoly plain;
    BiPoly log_coeff;

    double eval_poly(double x, double y, double r) const;
    std::complex<double> eval_alg(double x, double y) const;
    double eval_toda(double x, double y) const;
};

// Laurent-generated polynomial family, indices 1..n.
std::vector<ConservedDensity> generate_polynomial_family(int n, Vars vars);
// Per-index constants relating the (xi,sigma) forms to the substituted (u,v)
// forms; kept explicit so the relation stays a tested fact.
std::vector<Rational> polynomial_family_scale(int n);

// Algebraic (radical-bearing) family from the expansion at the origin.
std::vector<ConservedDensity> generate_algebraic_family(int n, Vars vars);

// Log-bearing lattice family; only the first four members are available.
std::vector<ConservedDensity> generate_toda_family(int n, Vars vars);

// Pointwise conservation identity, exact in the density parameter:
// F_xx H_ss - H_xx F_ss as a rational function (zero iff conserved).
RatBi conservation_residual(const BiPoly& F, const Model& model);
// Same residual split by powers of the density parameter for a first-order
// density pair against a first-order model: returns (order-0, order-1).
std::pair<BiPoly, BiPoly> conservation_residual_o1(const BiPoly& F0, const BiPoly& F1,
                                                   const Model& model);

bool is_conserved(const BiPoly& F, const Model& model);
bool is_conserved_o1(const BiPoly& F0, const BiPoly& F1, const Model& model);

// Dual route: variational test of F_1 (H_2)_x + F_2 (H_1)_x being a total
// derivative (subscripts = partials). Requires a polynomial Hamiltonian.
std::pair<JetExpr, JetExpr> conservation_euler_residual(const BiPoly& F, const BiPoly& H_poly);

// Pairwise involution residuals (same pointwise identity with F against G).
BiPoly involution_residual(const BiPoly& F, const BiPoly& G);
std::pair<BiPoly, BiPoly> involution_residual_o1(const BiPoly& F0, const BiPoly& F1,
                                                 const BiPoly& G0, const BiPoly& G1);

// Apply a polynomial-entry operator to a jet-level gradient.
std::pair<JetExpr, JetExpr> apply_poisson_jet(const PoissonOperator& P, const JetExpr& g1,
                                              const JetExpr& g2);

// Gradient of a toda density in (u,v), including the logarithmic part.
std::pair<JetExpr, JetExpr> toda_gradient(const ConservedDensity& S);
JetExpr toda_jet(const ConservedDensity& S);

}  // namespace strata

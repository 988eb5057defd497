#pragma once

#include <utility>
#include <vector>

#include "strata/bipoly.hpp"
#include "strata/conserved.hpp"

namespace strata {

// Parity-graded monomial subspaces stable under the wave-form operator:
//   R: xi^{2k+1} sigma^{2j},  0 <= k, j <= N      (dimension (N+1)^2)
//   S: xi^{2k}  sigma^{2j+1}, 0 <= k <= N, 0 <= j <= N-1   (dimension N(N+1))
enum class SubspaceKind { R, S };

struct MonomialSubspace {
    SubspaceKind kind;
    int N;
    std::vector<Exp2> basis;  // total degree ascending, then first exponent ascending
    int dim() const { return static_cast<int>(basis.size()); }
    int index_of(const Exp2& e) const;  // -1 when absent
};

MonomialSubspace make_subspace(SubspaceKind kind, int N);

// Does p lie in the monomial span of the given parity class (any N)?
bool parity_matches(const BiPoly& p, SubspaceKind kind);
// Minimal N whose subspace contains p; throws on a parity violation.
int required_N(const BiPoly& p, SubspaceKind kind);

// The operator (1 - xi^2) d^2/dxi^2 - (1 - sigma^2) d^2/dsigma^2.
BiPoly box_apply(const BiPoly& p);

struct BoxMatrix {
    MonomialSubspace space;
    std::vector<std::vector<Rational>> M;  // M[row][col], column = image of basis[col]
    Rational diag(int i) const { return M[i][i]; }
    bool is_upper_triangular() const;
    std::vector<int> kernel_indices() const;
};

BoxMatrix build_box(const MonomialSubspace& space);

// The canonical first-order Hamiltonian correction (1/4) xi (1 - xi^2) sigma^2.
BiPoly standard_H1();
BiPoly standard_H0();

// Right-hand side 2 (H1_xx F0_ss - H1_ss F0_xx) of the first-order
// deformation equation for the zeroth-order wave Hamiltonian.
BiPoly deformation_rhs(const BiPoly& F0, const BiPoly& H1);

// Solve the deformation equation for the kernel-free first-order correction.
// Throws std::domain_error when the solvability constraint fails.
BiPoly deform(const BiPoly& F0, const BiPoly& H1);

// Residual pair (order 0, order 1) of the conservation identity for
// (F0 + r F1) against (H0 + r H1); both zero iff the pair verifies.
std::pair<BiPoly, BiPoly> verify_first_order(const BiPoly& F0, const BiPoly& F1, const BiPoly& H0,
                                             const BiPoly& H1);

// Deform every density of a polynomial family in place (f1 fields filled).
void deform_family(std::vector<ConservedDensity>* family, const BiPoly& H1);

}  // namespace strata

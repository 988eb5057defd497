#include "strata/deformation.hpp"

#include <algorithm>
#include <stdexcept>

namespace strata {

int MonomialSubspace::index_of(const Exp2& e) const {
    auto it = std::lower_bound(basis.begin(), basis.end(), e, GradedLex{});
    if (it == basis.end() || !(*it == e)) return -1;
    return static_cast<int>(it - basis.begin());
}

MonomialSubspace make_subspace(SubspaceKind kind, int N) {
    if (N < 0) throw std::invalid_argument("make_subspace: N must be >= 0");
    MonomialSubspace out{kind, N, {}};
    if (kind == SubspaceKind::R) {
        for (int k = 0; k <= N; ++k)
            for (int j = 0; j <= N; ++j) out.basis.push_back(Exp2{2 * k + 1, 2 * j});
    } else {
        for (int k = 0; k <= N; ++k)
            for (int j = 0; j + 1 <= N; ++j) out.basis.push_back(Exp2{2 * k, 2 * j + 1});
    }
    std::sort(out.basis.begin(), out.basis.end(), GradedLex{});
    return out;
}

bool parity_matches(const BiPoly& p, SubspaceKind kind) {
    for (const auto& [e, c] : p.terms()) {
        bool ok = kind == SubspaceKind::R ? (e.a % 2 == 1 && e.b % 2 == 0)
                                          : (e.a % 2 == 0 && e.b % 2 == 1);
        if (!ok) return false;
    }
    return true;
}

int required_N(const BiPoly& p, SubspaceKind kind) {
    if (!parity_matches(p, kind)) throw std::domain_error("required_N: parity violation");
    int N = kind == SubspaceKind::S ? 1 : 0;
    for (const auto& [e, c] : p.terms()) {
        if (kind == SubspaceKind::R)
            N = std::max({N, (e.a - 1) / 2, e.b / 2});
        else
            N = std::max({N, e.a / 2, (e.b + 1) / 2});
    }
    return N;
}

BiPoly box_apply(const BiPoly& p) {
    if (p.vars() != Vars::xs) throw std::invalid_argument("box_apply: expected (xi,sigma)");
    BiPoly xi2 = BiPoly::mono(Vars::xs, 2, 0, Rational(1));
    BiPoly sg2 = BiPoly::mono(Vars::xs, 0, 2, Rational(1));
    BiPoly one = BiPoly::constant(Vars::xs, Rational(1));
    return (one - xi2) * p.diff(1, 2) - (one - sg2) * p.diff(2, 2);
}

BoxMatrix build_box(const MonomialSubspace& space) {
    BoxMatrix out{space, {}};
    int n = space.dim();
    out.M.assign(n, std::vector<Rational>(n, Rational(0)));
    for (int col = 0; col < n; ++col) {
        const Exp2& e = space.basis[col];
        BiPoly img = box_apply(BiPoly::mono(Vars::xs, e.a, e.b, Rational(1)));
        for (const auto& [m, c] : img.terms()) {
            int row = space.index_of(m);
            if (row < 0)
                throw std::logic_error("build_box: image leaves the subspace");
            out.M[row][col] = c;
        }
    }
    return out;
}

bool BoxMatrix::is_upper_triangular() const {
    for (size_t i = 0; i < M.size(); ++i)
        for (size_t j = 0; j < i; ++j)
            if (!M[i][j].is_zero()) return false;
    return true;
}

std::vector<int> BoxMatrix::kernel_indices() const {
    std::vector<int> out;
    for (size_t i = 0; i < M.size(); ++i)
        if (M[i][i].is_zero()) out.push_back(static_cast<int>(i));
    return out;
}

BiPoly standard_H0() {
    BiPoly xi = BiPoly::var1(Vars::xs), sg = BiPoly::var2(Vars::xs);
    BiPoly one = BiPoly::constant(Vars::xs, Rational(1));
    return ((one - xi * xi) * sg * sg + xi * xi) * Rational(1, 4);
}

BiPoly standard_H1() {
    BiPoly xi = BiPoly::var1(Vars::xs), sg = BiPoly::var2(Vars::xs);
    BiPoly one = BiPoly::constant(Vars::xs, Rational(1));
    return xi * (one - xi * xi) * sg * sg * Rational(1, 4);
}

BiPoly deformation_rhs(const BiPoly& F0, const BiPoly& H1) {
    if (F0.vars() != Vars::xs || H1.vars() != Vars::xs)
        throw std::invalid_argument("deformation_rhs: expected (xi,sigma)");
    return (H1.diff(1, 2) * F0.diff(2, 2) - H1.diff(2, 2) * F0.diff(1, 2)) * Rational(2);
}

BiPoly deform(const BiPoly& F0, const BiPoly& H1) {
    BiPoly rhs = deformation_rhs(F0, H1);
    if (rhs.is_zero()) return BiPoly(Vars::xs);

    if (!rhs.eval(Rational(1), Rational(1)).is_zero())
        throw std::domain_error("deform: solvability constraint fails (corner value nonzero)");

    SubspaceKind kind =
        parity_matches(rhs, SubspaceKind::R) ? SubspaceKind::R : SubspaceKind::S;
    MonomialSubspace space = make_subspace(kind, required_N(rhs, kind));
    BoxMatrix box = build_box(space);
    int n = space.dim();

    std::vector<Rational> b(n, Rational(0));
    for (const auto& [e, c] : rhs.terms()) {
        int row = space.index_of(e);
        if (row < 0) throw std::logic_error("deform: right-hand side leaves the subspace");
        b[row] = c;
    }

    auto kernels = box.kernel_indices();
    if (kernels.size() != 1 || kernels[0] != 0)
        throw std::logic_error("deform: unexpected kernel structure");

    std::vector<Rational> x(n, Rational(0));
    for (int i = n - 1; i >= 1; --i) {
        Rational acc = b[i];
        for (int j = i + 1; j < n; ++j) acc -= box.M[i][j] * x[j];
        x[i] = acc / box.M[i][i];
    }
    // Kernel row: the remaining equation must be consistent; the kernel
    // component itself is fixed to zero.
    Rational acc = b[0];
    for (int j = 1; j < n; ++j) acc -= box.M[0][j] * x[j];
    if (!acc.is_zero()) throw std::logic_error("deform: inconsistent triangular system");

    BiPoly out(Vars::xs);
    for (int i = 1; i < n; ++i) out.add_term(space.basis[i].a, space.basis[i].b, x[i]);
    return out;
}

std::pair<BiPoly, BiPoly> verify_first_order(const BiPoly& F0, const BiPoly& F1, const BiPoly& H0,
                                             const BiPoly& H1) {
    BiPoly r0 = F0.diff(1, 2) * H0.diff(2, 2) - H0.diff(1, 2) * F0.diff(2, 2);
    BiPoly r1 = F1.diff(1, 2) * H0.diff(2, 2) + F0.diff(1, 2) * H1.diff(2, 2) -
                H1.diff(1, 2) * F0.diff(2, 2) - H0.diff(1, 2) * F1.diff(2, 2);
    return {r0, r1};
}

void deform_family(std::vector<ConservedDensity>* family, const BiPoly& H1) {
    for (auto& d : *family) {
        if (d.family != Family::poly || d.vars != Vars::xs)
            throw std::invalid_argument("deform_family: expects the (xi,sigma) polynomial family");
        d.f1 = deform(d.f0, H1);
        d.deformed = true;
    }
}

}  // namespace strata

#pragma once

#include <compare>
#include <map>
#include <string>
#include <utility>

#include "strata/bipoly.hpp"

namespace strata {

// Monomial in the differential ring generated by two fields and their x-jets:
//   w1^e1 w2^e2 (w1_x)^d1 (w2_x)^d2 (w1_xx)^dd1 (w2_xx)^dd2 log(w1)^lg
// Field powers may be negative; jet and log powers are non-negative.
struct JetMono {
    int e1 = 0, e2 = 0;
    int d1 = 0, d2 = 0;
    int dd1 = 0, dd2 = 0;
    int lg = 0;
    friend auto operator<=>(const JetMono&, const JetMono&) = default;
};

// Differential polynomial with exact rational coefficients.
class JetExpr {
public:
    JetExpr() = default;
    explicit JetExpr(Vars vars) : vars_(vars) {}

    static JetExpr constant(Vars vars, const Rational& c);
    static JetExpr field(Vars vars, int which, int power = 1);
    static JetExpr deriv(Vars vars, int which, int power = 1);
    static JetExpr log_field1(Vars vars, int power = 1);
    static JetExpr from_bipoly(const BiPoly& p);

    Vars vars() const { return vars_; }
    const std::map<JetMono, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // 0: point function; 1: first jets appear; 2: second jets appear.
    int jet_order() const;

    JetExpr& operator+=(const JetExpr& o);
    JetExpr& operator-=(const JetExpr& o);
    JetExpr& operator*=(const JetExpr& o);
    JetExpr& operator*=(const Rational& c);
    friend JetExpr operator+(JetExpr a, const JetExpr& b) { return a += b; }
    friend JetExpr operator-(JetExpr a, const JetExpr& b) { return a -= b; }
    friend JetExpr operator*(JetExpr a, const JetExpr& b) { return a *= b; }
    friend JetExpr operator*(JetExpr a, const Rational& c) { return a *= c; }
    friend JetExpr operator*(const Rational& c, JetExpr a) { return a *= c; }
    JetExpr operator-() const;
    friend bool operator==(const JetExpr& a, const JetExpr& b) {
        return a.vars_ == b.vars_ && a.t_ == b.t_;
    }

    // Total x-derivative. Inputs of jet order 2 are rejected (third jets are
    // outside the ring).
    JetExpr dx() const;
    // Formal partial with respect to the pointwise field value (chain rule
    // through the logarithm included).
    JetExpr d_field(int which) const;
    // Formal partial with respect to the first jet of field `which`.
    JetExpr d_deriv(int which) const;
    // Variational derivative pair (E_1 e, E_2 e) with E_i = d/dw_i - D_x d/dw_i_x.
    std::pair<JetExpr, JetExpr> euler() const;

    std::string str() const;

    void add_term(const JetMono& m, const Rational& c);

private:
    Vars vars_ = Vars::xs;
    std::map<JetMono, Rational> t_;
};

}  // namespace strata

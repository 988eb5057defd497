#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "strata/rational.hpp"

namespace strata {

// Which variable pair a polynomial lives in. xs = (xi, sigma), uv = (u, v).
enum class Vars { xs, uv };

const char* var_name(Vars vars, int which);
const char* to_string(Vars vars);
Vars vars_from_string(const std::string& s);

struct Exp2 {
    int a = 0;  // exponent of first variable (xi or u)
    int b = 0;  // exponent of second variable (sigma or v)
    friend bool operator==(const Exp2&, const Exp2&) = default;
};

// Canonical monomial order: total degree ascending, then first exponent ascending.
struct GradedLex {
    bool operator()(const Exp2& l, const Exp2& r) const {
        int dl = l.a + l.b, dr = r.a + r.b;
        if (dl != dr) return dl < dr;
        if (l.a != r.a) return l.a < r.a;
        return l.b < r.b;
    }
};

class BiPoly {
public:
    using TermMap = std::map<Exp2, Rational, GradedLex>;

    BiPoly() = default;
    explicit BiPoly(Vars vars) : vars_(vars) {}

    static BiPoly constant(Vars vars, const Rational& c);
    static BiPoly mono(Vars vars, int a, int b, const Rational& c);
    static BiPoly var1(Vars vars) { return mono(vars, 1, 0, Rational(1)); }
    static BiPoly var2(Vars vars) { return mono(vars, 0, 1, Rational(1)); }

    Vars vars() const { return vars_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    bool is_constant() const;
    // -1 for the zero polynomial.
    int total_degree() const;
    int degree(int which) const;
    Rational coeff(int a, int b) const;
    Rational constant_term() const { return coeff(0, 0); }

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    BiPoly& operator*=(const BiPoly& o);
    BiPoly& operator*=(const Rational& c);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(BiPoly a, const BiPoly& b) { return a *= b; }
    friend BiPoly operator*(BiPoly a, const Rational& c) { return a *= c; }
    friend BiPoly operator*(const Rational& c, BiPoly a) { return a *= c; }
    BiPoly operator-() const;
    friend bool operator==(const BiPoly& a, const BiPoly& b) {
        return a.vars_ == b.vars_ && a.t_ == b.t_;
    }

    BiPoly pow(int n) const;
    // Partial derivative with respect to variable `which` (1 or 2).
    BiPoly diff(int which, int order = 1) const;
    // Substitute polynomials for both variables; x1, x2 share a variable pair
    // and the result lives in theirs.
    BiPoly substitute(const BiPoly& x1, const BiPoly& x2) const;
    Rational eval(const Rational& x, const Rational& y) const;
    double eval_d(double x, double y) const;

    // Exact division; throws std::domain_error when the division leaves a remainder.
    BiPoly div_exact(const BiPoly& divisor) const;
    static bool try_div_exact(const BiPoly& num, const BiPoly& den, BiPoly* quot);

    // Content * monomial gcd of all terms, for cheap rational-function cleanup.
    Rational content() const;
    Exp2 monomial_gcd() const;
    BiPoly shift_down(const Exp2& e) const;  // divide every term by x^e.a y^e.b

    std::string str() const;

    void add_term(int a, int b, const Rational& c);

private:
    Vars vars_ = Vars::xs;
    TermMap t_;
};

void require_same_vars(const BiPoly& a, const BiPoly& b, const char* where);

// Dense Horner-scheme evaluator compiled from a BiPoly, for hot numeric loops.
class PolyEval {
public:
    PolyEval() = default;
    explicit PolyEval(const BiPoly& p);
    double operator()(double x, double y) const;

private:
    int da_ = 0, db_ = 0;
    std::vector<double> c_;  // (da_+1) x (db_+1), row-major in the first exponent
};

// Rational function: quotient of two BiPoly over the same variable pair.
// Kept only cheaply normalized (monomial/content cancellation, exact-division
// collapse); equality is decided by cross-multiplication.
class RatBi {
public:
    RatBi() : num_(), den_(BiPoly::constant(Vars::xs, Rational(1))) {}
    RatBi(const BiPoly& p) : num_(p), den_(BiPoly::constant(p.vars(), Rational(1))) {}
    RatBi(const BiPoly& n, const BiPoly& d);

    static RatBi constant(Vars vars, const Rational& c) {
        return RatBi(BiPoly::constant(vars, c));
    }

    Vars vars() const { return num_.vars(); }
    const BiPoly& num() const { return num_; }
    const BiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    // Valid only when is_polynomial().
    BiPoly as_poly() const;

    RatBi& operator+=(const RatBi& o);
    RatBi& operator-=(const RatBi& o);
    RatBi& operator*=(const RatBi& o);
    RatBi& operator/=(const RatBi& o);
    RatBi& operator*=(const Rational& c);
    friend RatBi operator+(RatBi a, const RatBi& b) { return a += b; }
    friend RatBi operator-(RatBi a, const RatBi& b) { return a -= b; }
    friend RatBi operator*(RatBi a, const RatBi& b) { return a *= b; }
    friend RatBi operator/(RatBi a, const RatBi& b) { return a /= b; }
    friend RatBi operator*(RatBi a, const Rational& c) { return a *= c; }
    RatBi operator-() const;
    friend bool operator==(const RatBi& a, const RatBi& b) {
        return (a.num_ * b.den_) == (b.num_ * a.den_);
    }

    RatBi diff(int which) const;
    Rational eval(const Rational& x, const Rational& y) const;
    double eval_d(double x, double y) const;

    std::string str() const;

private:
    void normalize();
    BiPoly num_, den_;
};

}  // namespace strata

#pragma once

#include <array>
#include <string>
#include <vector>

#include "strata/bipoly.hpp"

namespace strata {

// Unit system: boussinesq keeps the full restoring term; fixed_g is the
// near-unit-density-ratio scaling in which the potential carries an explicit
// factor of the density parameter.
enum class Scaling { boussinesq, fixed_g };
// Truncation of the density-parameter dependence.
enum class Order { o0, o1, full };

Scaling scaling_from_string(const std::string& s);
Order order_from_string(const std::string& s);
const char* to_string(Scaling s);
const char* to_string(Order o);

struct ModelParams {
    Rational r = Rational(0);
    Scaling scaling = Scaling::boussinesq;
    Order order = Order::full;
};

class Model {
public:
    explicit Model(ModelParams params);

    const ModelParams& params() const { return params_; }
    double r() const { return r_; }

    // Exact forms, density parameter folded in as a rational constant.
    const RatBi& H() const { return H_; }
    const RatBi& Hx() const { return Hx_; }
    const RatBi& Hs() const { return Hs_; }
    const RatBi& Hxx() const { return Hxx_; }
    const RatBi& Hss() const { return Hss_; }
    const RatBi& Hxs() const { return Hxs_; }

    // Coefficients of the expansion of the Hamiltonian density in powers of
    // the density parameter, up to and including r^through.
    std::vector<BiPoly> r_series(int through) const;

    // Numeric fast path (closed forms, independent of the exact route).
    double h(double xi, double s) const;
    double hx(double xi, double s) const;
    double hs(double xi, double s) const;
    double hxx(double xi, double s) const;
    double hss(double xi, double s) const;
    double hxs(double xi, double s) const;

    // Flux vector of the evolution system: w_t + d/dx (hs, hx) = 0.
    std::array<double, 2> flux(double xi, double s) const;
    // Quasilinear matrix [[Hxs, Hss], [Hxx, Hxs]].
    std::array<std::array<double, 2>, 2> quasilinear(double xi, double s) const;
    // Characteristic speeds; false when the state is elliptic.
    bool speeds(double xi, double s, double* lam_minus, double* lam_plus) const;
    bool is_hyperbolic(double xi, double s) const;

private:
    ModelParams params_;
    double r_;
    RatBi H_, Hx_, Hs_, Hxx_, Hss_, Hxs_;
};

}  // namespace strata

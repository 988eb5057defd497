#include "strata/models.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

Scaling scaling_from_string(const std::string& s) {
    if (s == "boussinesq") return Scaling::boussinesq;
    if (s == "fixed-g" || s == "fixed_g") return Scaling::fixed_g;
    throw std::invalid_argument("unknown scaling: " + s);
}

Order order_from_string(const std::string& s) {
    if (s == "o0") return Order::o0;
    if (s == "o1") return Order::o1;
    if (s == "full") return Order::full;
    throw std::invalid_argument("unknown order: " + s);
}

const char* to_string(Scaling s) { return s == Scaling::boussinesq ? "boussinesq" : "fixed-g"; }
const char* to_string(Order o) {
    switch (o) {
        case Order::o0: return "o0";
        case Order::o1: return "o1";
        default: return "full";
    }
}

namespace {

// Exact Hamiltonian density for the given parameters, in (xi, sigma).
RatBi build_H(const ModelParams& p) {
    const Vars V = Vars::xs;
    BiPoly xi = BiPoly::var1(V), sg = BiPoly::var2(V);
    BiPoly one = BiPoly::constant(V, Rational(1));
    BiPoly kin = (one - xi * xi) * (sg * sg);  // (1-xi^2) sigma^2
    BiPoly xi2 = xi * xi;
    const Rational& r = p.r;
    const Rational q(1, 4);
    BiPoly omrx = one - xi * r;  // 1 - r xi

    BiPoly pot = p.scaling == Scaling::boussinesq ? xi2 : xi2 * (r * Rational(2));
    switch (p.order) {
        case Order::o0: {
            BiPoly num = p.scaling == Scaling::boussinesq ? (kin + xi2) : kin;
            return RatBi(num * q);
        }
        case Order::o1: {
            BiPoly num = kin * (one + xi * r) + pot;
            return RatBi(num * q);
        }
        case Order::full:
        default:
            return RatBi((kin + pot * omrx) * q, omrx);
    }
}

}  // namespace

Model::Model(ModelParams params) : params_(std::move(params)), r_(params_.r.to_double()) {
    if (params_.r.sign() < 0 || params_.r >= Rational(1))
        throw std::invalid_argument("Model: density parameter must lie in [0, 1)");
    H_ = build_H(params_);
    Hx_ = H_.diff(1);
    Hs_ = H_.diff(2);
    Hxx_ = Hx_.diff(1);
    Hss_ = Hs_.diff(2);
    Hxs_ = Hx_.diff(2);
}

std::vector<BiPoly> Model::r_series(int through) const {
    if (through < 0) throw std::invalid_argument("Model::r_series: negative order");
    const Vars V = Vars::xs;
    BiPoly xi = BiPoly::var1(V), sg = BiPoly::var2(V);
    BiPoly one = BiPoly::constant(V, Rational(1));
    BiPoly kin = (one - xi * xi) * (sg * sg);
    BiPoly xi2 = xi * xi;
    const Rational q(1, 4);
    std::vector<BiPoly> out(through + 1, BiPoly(V));

    // kinetic part: (1/4) kin * xi^k at order k (geometric expansion of the
    // interface factor), truncated by the model order.
    int kin_orders = params_.order == Order::o0 ? 0 : (params_.order == Order::o1 ? 1 : through);
    for (int k = 0; k <= std::min(kin_orders, through); ++k) out[k] += kin * xi.pow(k) * q;

    if (params_.scaling == Scaling::boussinesq) {
        // the quadratic potential sits at order zero in this scaling
        out[0] += xi2 * q;
    } else {
        // potential enters at first order in the density parameter
        if (params_.order != Order::o0 && through >= 1) out[1] += xi2 * Rational(1, 2);
    }
    return out;
}

double Model::h(double xi, double s) const {
    double kin = (1 - xi * xi) * s * s;
    switch (params_.order) {
        case Order::o0:
            return params_.scaling == Scaling::boussinesq ? 0.25 * (kin + xi * xi) : 0.25 * kin;
        case Order::o1: {
            double pot = params_.scaling == Scaling::boussinesq ? xi * xi : 2 * r_ * xi * xi;
            return 0.25 * (kin * (1 + r_ * xi) + pot);
        }
        default: {
            double pot = params_.scaling == Scaling::boussinesq ? xi * xi : 2 * r_ * xi * xi;
            return 0.25 * (kin / (1 - r_ * xi) + pot);
        }
    }
}

double Model::hx(double xi, double s) const {
    switch (params_.order) {
        case Order::o0:
            return params_.scaling == Scaling::boussinesq ? 0.5 * xi * (1 - s * s)
                                                          : -0.5 * xi * s * s;
        case Order::o1: {
            double base = -0.5 * xi * s * s + 0.25 * r_ * (1 - 3 * xi * xi) * s * s;
            if (params_.scaling == Scaling::boussinesq) return base + 0.5 * xi;
            return base + r_ * xi;
        }
        default: {
            double m = 1 - r_ * xi;
            double base = 0.25 * s * s * (r_ + r_ * xi * xi - 2 * xi) / (m * m);
            return base + (params_.scaling == Scaling::boussinesq ? 0.5 * xi : r_ * xi);
        }
    }
}

double Model::hs(double xi, double s) const {
    switch (params_.order) {
        case Order::o0:
            return 0.5 * (1 - xi * xi) * s;
        case Order::o1:
            return 0.5 * (1 - xi * xi) * s * (1 + r_ * xi);
        default:
            return 0.5 * (1 - xi * xi) * s / (1 - r_ * xi);
    }
}

double Model::hxx(double xi, double s) const {
    switch (params_.order) {
        case Order::o0:
            return params_.scaling == Scaling::boussinesq ? 0.5 * (1 - s * s) : -0.5 * s * s;
        case Order::o1: {
            double base = -0.5 * s * s - 1.5 * r_ * xi * s * s;
            if (params_.scaling == Scaling::boussinesq) return base + 0.5;
            return base + r_;
        }
        default: {
            double m = 1 - r_ * xi;
            double base = -0.5 * s * s * (1 - r_ * r_) / (m * m * m);
            return base + (params_.scaling == Scaling::boussinesq ? 0.5 : r_);
        }
    }
}

double Model::hss(double xi, double s) const {
    (void)s;
    switch (params_.order) {
        case Order::o0:
            return 0.5 * (1 - xi * xi);
        case Order::o1:
            return 0.5 * (1 - xi * xi) * (1 + r_ * xi);
        default:
            return 0.5 * (1 - xi * xi) / (1 - r_ * xi);
    }
}

double Model::hxs(double xi, double s) const {
    switch (params_.order) {
        case Order::o0:
            return -xi * s;
        case Order::o1:
            return -xi * s + 0.5 * r_ * (1 - 3 * xi * xi) * s;
        default: {
            double m = 1 - r_ * xi;
            return 0.5 * s * (r_ + r_ * xi * xi - 2 * xi) / (m * m);
        }
    }
}

std::array<double, 2> Model::flux(double xi, double s) const { return {hs(xi, s), hx(xi, s)}; }

std::array<std::array<double, 2>, 2> Model::quasilinear(double xi, double s) const {
    double a = hxs(xi, s);
    return {{{a, hss(xi, s)}, {hxx(xi, s), a}}};
}

bool Model::speeds(double xi, double s, double* lam_minus, double* lam_plus) const {
    double prod = hss(xi, s) * hxx(xi, s);
    if (prod < 0) return false;
    double root = std::sqrt(prod), mid = hxs(xi, s);
    if (lam_minus) *lam_minus = mid - root;
    if (lam_plus) *lam_plus = mid + root;
    return true;
}

bool Model::is_hyperbolic(double xi, double s) const { return speeds(xi, s, nullptr, nullptr); }

}  // namespace strata

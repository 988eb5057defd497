#include "strata/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "strata/spectral.hpp"

namespace strata {

Scheme scheme_from_string(const std::string& s) {
    if (s == "central-rk4" || s == "central_rk4") return Scheme::central_rk4;
    if (s == "lax-friedrichs" || s == "lax_friedrichs") return Scheme::lax_friedrichs;
    throw std::invalid_argument("unknown scheme: " + s);
}

const char* to_string(Scheme s) {
    return s == Scheme::central_rk4 ? "central-rk4" : "lax-friedrichs";
}

namespace {
std::string elliptic_message(int cell, double x, double t, double xi, double sigma) {
    std::ostringstream os;
    os << "elliptic state reached at cell " << cell << " (x=" << x << ", t=" << t
       << ", xi=" << xi << ", sigma=" << sigma << ")";
    return os.str();
}
}  // namespace

EllipticStateError::EllipticStateError(int cell_, double x_, double t_, double xi_, double sigma_)
    : std::runtime_error(elliptic_message(cell_, x_, t_, xi_, sigma_)),
      cell(cell_),
      x(x_),
      t(t_),
      xi(xi_),
      sigma(sigma_) {}

Simulator::Simulator(Model model, SimConfig cfg, GridState init)
    : model_(std::move(model)), cfg_(cfg), st_(std::move(init)) {
    if (st_.nx < 4 || static_cast<int>(st_.xi.size()) != st_.nx ||
        static_cast<int>(st_.sg.size()) != st_.nx)
        throw std::invalid_argument("Simulator: bad grid");
    if (cfg_.cfl <= 0 || cfg_.cfl > 0.5)
        throw std::invalid_argument("Simulator: cfl must lie in (0, 0.5]");
}

double Simulator::speed_bound(double xi, double sg) const {
    double hxs = model_.hxs(xi, sg);
    double prod = model_.hss(xi, sg) * model_.hxx(xi, sg);
    return std::abs(hxs) + std::sqrt(std::abs(prod));
}

double Simulator::max_speed() const {
    double m = 1e-12;
    for (int i = 0; i < st_.nx; ++i) m = std::max(m, speed_bound(st_.xi[i], st_.sg[i]));
    return m;
}

double Simulator::cfl_dt() const { return cfg_.cfl * st_.dx() / max_speed(); }

void Simulator::check_hyperbolic() const {
    for (int i = 0; i < st_.nx; ++i)
        if (!model_.is_hyperbolic(st_.xi[i], st_.sg[i]))
            throw EllipticStateError(i, st_.x_of(i), st_.t, st_.xi[i], st_.sg[i]);
}

int Simulator::wrap(int i) const {
    const int n = st_.nx;
    if (cfg_.periodic) return ((i % n) + n) % n;
    return std::clamp(i, 0, n - 1);
}

void Simulator::rhs(const std::vector<double>& xi, const std::vector<double>& sg,
                    std::vector<double>* dxi, std::vector<double>* dsg) const {
    const int n = st_.nx;
    const double dx = st_.dx();
    dxi->assign(n, 0.0);
    dsg->assign(n, 0.0);

    std::vector<double> f1(n), f2(n), sp(n);
    for (int i = 0; i < n; ++i) {
        auto f = model_.flux(xi[i], sg[i]);
        f1[i] = f[0];
        f2[i] = f[1];
        sp[i] = speed_bound(xi[i], sg[i]);
    }

    // Central face flux with an O(dx) viscosity coefficient, so the scheme
    // stays second-order accurate while damping odd-even modes.
    auto face = [&](int i, double* F1, double* F2) {
        int a = wrap(i), b = wrap(i + 1);
        double alpha = cfg_.c_visc * dx * std::max(sp[a], sp[b]);
        *F1 = 0.5 * (f1[a] + f1[b]) - 0.5 * alpha * (xi[b] - xi[a]);
        *F2 = 0.5 * (f2[a] + f2[b]) - 0.5 * alpha * (sg[b] - sg[a]);
    };

    double Fl1, Fl2, Fr1, Fr2;
    face(-1, &Fl1, &Fl2);
    for (int i = 0; i < n; ++i) {
        face(i, &Fr1, &Fr2);
        (*dxi)[i] = -(Fr1 - Fl1) / dx;
        (*dsg)[i] = -(Fr2 - Fl2) / dx;
        Fl1 = Fr1;
        Fl2 = Fr2;
    }
}

void Simulator::step(double dt) {
    check_hyperbolic();
    const int n = st_.nx;
    std::vector<double> xi_old = st_.xi, sg_old = st_.sg;

    if (cfg_.scheme == Scheme::lax_friedrichs) {
        const double dx = st_.dx();
        std::vector<double> f1(n), f2(n);
        for (int i = 0; i < n; ++i) {
            auto f = model_.flux(xi_old[i], sg_old[i]);
            f1[i] = f[0];
            f2[i] = f[1];
        }
        for (int i = 0; i < n; ++i) {
            int a = wrap(i - 1), b = wrap(i + 1);
            st_.xi[i] = 0.5 * (xi_old[a] + xi_old[b]) - dt / (2 * dx) * (f1[b] - f1[a]);
            st_.sg[i] = 0.5 * (sg_old[a] + sg_old[b]) - dt / (2 * dx) * (f2[b] - f2[a]);
        }
    } else {
        std::vector<double> k1x(n), k1s(n), k2x(n), k2s(n), k3x(n), k3s(n), k4x(n), k4s(n);
        std::vector<double> tx(n), ts(n);
        rhs(st_.xi, st_.sg, &k1x, &k1s);
        for (int i = 0; i < n; ++i) {
            tx[i] = st_.xi[i] + 0.5 * dt * k1x[i];
            ts[i] = st_.sg[i] + 0.5 * dt * k1s[i];
        }
        rhs(tx, ts, &k2x, &k2s);
        for (int i = 0; i < n; ++i) {
            tx[i] = st_.xi[i] + 0.5 * dt * k2x[i];
            ts[i] = st_.sg[i] + 0.5 * dt * k2s[i];
        }
        rhs(tx, ts, &k3x, &k3s);
        for (int i = 0; i < n; ++i) {
            tx[i] = st_.xi[i] + dt * k3x[i];
            ts[i] = st_.sg[i] + dt * k3s[i];
        }
        rhs(tx, ts, &k4x, &k4s);
        for (int i = 0; i < n; ++i) {
            st_.xi[i] += dt / 6.0 * (k1x[i] + 2 * k2x[i] + 2 * k3x[i] + k4x[i]);
            st_.sg[i] += dt / 6.0 * (k1s[i] + 2 * k2s[i] + 2 * k3s[i] + k4s[i]);
        }
    }
    update_tracers(xi_old, sg_old, dt);
    st_.t += dt;
}

void Simulator::advance_to(double T, const std::function<void(const Simulator&)>& on_step) {
    while (st_.t < T - 1e-13) {
        double dt = std::min(cfl_dt(), T - st_.t);
        step(dt);
        if (on_step) on_step(*this);
    }
}

double Simulator::integral(const std::function<double(double, double)>& density) const {
    double sum = 0;
    for (int i = 0; i < st_.nx; ++i) sum += density(st_.xi[i], st_.sg[i]);
    return sum * st_.dx();
}

double Simulator::integral_xi() const {
    double sum = 0;
    for (double v : st_.xi) sum += v;
    return sum * st_.dx();
}

double Simulator::integral_sigma() const {
    double sum = 0;
    for (double v : st_.sg) sum += v;
    return sum * st_.dx();
}

std::array<double, 2> Simulator::sample_arrays(const std::vector<double>& xi,
                                               const std::vector<double>& sg, double x) const {
    const int n = st_.nx;
    const double dx = st_.dx();
    double u = (x - st_.x0) / dx - 0.5;
    if (cfg_.periodic) {
        u = std::fmod(u, n);
        if (u < 0) u += n;
    } else {
        u = std::clamp(u, 0.0, n - 1.0);
    }
    int i0 = static_cast<int>(std::floor(u));
    double w = u - i0;
    int i1 = wrap(i0 + 1);
    i0 = wrap(i0);
    return {xi[i0] * (1 - w) + xi[i1] * w, sg[i0] * (1 - w) + sg[i1] * w};
}

std::array<double, 2> Simulator::sample(double x) const { return sample_arrays(st_.xi, st_.sg, x); }

void Simulator::add_tracer(double x_start, int sign) {
    Tracer tr;
    tr.x = x_start;
    tr.sign = sign;
    auto w = sample(x_start);
    tr.R_start = RiemannData::R_xs(sign, w[0], w[1], model_.r());
    tr.R_now = tr.R_start;
    tracers_.push_back(tr);
}

void Simulator::update_tracers(const std::vector<double>& xi_old, const std::vector<double>& sg_old,
                               double dt) {
    for (auto& tr : tracers_) {
        auto w0 = sample_arrays(xi_old, sg_old, tr.x);
        double lm, lp;
        double k1 = model_.speeds(w0[0], w0[1], &lm, &lp) ? (tr.sign > 0 ? lp : lm) : 0.0;
        auto w1 = sample_arrays(st_.xi, st_.sg, tr.x + dt * k1);
        double k2 = model_.speeds(w1[0], w1[1], &lm, &lp) ? (tr.sign > 0 ? lp : lm) : k1;
        tr.x += 0.5 * dt * (k1 + k2);
        if (cfg_.periodic) {
            double L = st_.x1 - st_.x0;
            tr.x = st_.x0 + std::fmod(std::fmod(tr.x - st_.x0, L) + L, L);
        }
        auto w = sample_arrays(st_.xi, st_.sg, tr.x);
        tr.R_now = RiemannData::R_xs(tr.sign, w[0], w[1], model_.r());
        tr.max_drift = std::max(tr.max_drift, std::abs(tr.R_now - tr.R_start));
    }
}

}  // namespace strata

#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/models.hpp"

namespace strata {

enum class Scheme { central_rk4, lax_friedrichs };

Scheme scheme_from_string(const std::string& s);
const char* to_string(Scheme s);

struct SimConfig {
    Scheme scheme = Scheme::central_rk4;
    double cfl = 0.4;
    double c_visc = 0.15;  // flux correction coefficient; dissipation ~ c * s * dx^2
    bool periodic = true;
};

struct GridState {
    double x0 = 0, x1 = 1;
    int nx = 0;
    double t = 0;
    std::vector<double> xi, sg;

    double dx() const { return (x1 - x0) / nx; }
    double x_of(int i) const { return x0 + (i + 0.5) * dx(); }
};

// Raised when the evolution reaches a state outside the hyperbolic region.
struct EllipticStateError : std::runtime_error {
    EllipticStateError(int cell_, double x_, double t_, double xi_, double sigma_);
    int cell;
    double x, t, xi, sigma;
};

class Simulator {
public:
    struct Tracer {
        double x = 0;
        int sign = +1;
        double R_start = 0;
        double R_now = 0;
        double max_drift = 0;
    };

    Simulator(Model model, SimConfig cfg, GridState init);

    const GridState& state() const { return st_; }
    const Model& model() const { return model_; }
    const SimConfig& config() const { return cfg_; }

    double max_speed() const;
    double cfl_dt() const;

    // One full scheme step of size dt.
    void step(double dt);
    // March to time T with CFL-limited steps; optional per-step callback.
    void advance_to(double T, const std::function<void(const Simulator&)>& on_step = {});

    // Integral of a pointwise density over the domain (cell-average sum).
    double integral(const std::function<double(double, double)>& density) const;
    double integral_xi() const;
    double integral_sigma() const;

    // Linear interpolation of the state at position x.
    std::array<double, 2> sample(double x) const;

    void add_tracer(double x_start, int sign);
    const std::vector<Tracer>& tracers() const { return tracers_; }

private:
    int wrap(int i) const;
    void rhs(const std::vector<double>& xi, const std::vector<double>& sg,
             std::vector<double>* dxi, std::vector<double>* dsg) const;
    void check_hyperbolic() const;
    double speed_bound(double xi, double sg) const;
    void update_tracers(const std::vector<double>& xi_old, const std::vector<double>& sg_old,
                        double dt);
    std::array<double, 2> sample_arrays(const std::vector<double>& xi,
                                        const std::vector<double>& sg, double x) const;

    Model model_;
    SimConfig cfg_;
    GridState st_;
    std::vector<Tracer> tracers_;
};

}  // namespace strata

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "strata/bipoly.hpp"
#include "strata/models.hpp"

namespace strata {

// Which pair of implicit equations defines the local solution.
enum class ICMode { sigma_zero, xi_constant };
// first_order: expand the root to first order in the density parameter;
// exact: Newton on the untruncated pair (within the first-order model).
enum class SolveMode { first_order, exact };

ICMode ic_mode_from_string(const std::string& s);
SolveMode solve_mode_from_string(const std::string& s);
const char* to_string(ICMode m);
const char* to_string(SolveMode m);

struct HodographConfig {
    int f_index = 3;
    Rational r = Rational(1, 20);
    ICMode mode = ICMode::sigma_zero;
    SolveMode solve = SolveMode::first_order;
    double xmin = -0.5;
    double xmax = 0.5;
    int nx = 101;
};

struct HodographPoint {
    double x = 0, t = 0;
    double xi = 0, sigma = 0;
    double res1 = 0, res2 = 0;
    bool converged = false;
};

class HodographSolver {
public:
    explicit HodographSolver(HodographConfig cfg);

    const HodographConfig& config() const { return cfg_; }
    const Model& model() const { return model_; }
    const BiPoly& F0() const { return F0_; }
    const BiPoly& F1() const { return F1_; }

    HodographPoint solve_point(double x, double t, std::optional<std::array<double, 2>> seed = {}) const;
    std::vector<HodographPoint> profile(double t) const;
    std::vector<std::vector<HodographPoint>> evolve(const std::vector<double>& times) const;

    // Level functions whose level sets are the constant-time and
    // constant-position curves of the implicit solution.
    double time_level(double xi, double sigma) const;
    double space_level(double xi, double sigma) const;
    // First-order expansions of the same level functions.
    double time_level_o1(double xi, double sigma) const;
    double space_level_o1(double xi, double sigma) const;

    // (w, ubar1, ubar2) from the interface variables.
    static std::array<double, 3> layer_variables(double xi, double sigma, double r);

private:
    struct Deriv2 {
        // second derivatives of a density and their gradients
        PolyEval xs, ss, xx;
        PolyEval xs_x, xs_s, ss_x, ss_s, xx_x, xx_s;
    };
    static Deriv2 compile(const BiPoly& F);

    // G(W; r_eff) and its Jacobian for the configured mode.
    std::array<double, 2> G(double xi, double sg, double x, double t, double r_eff) const;
    std::array<std::array<double, 2>, 2> JG(double xi, double sg, double t, double r_eff) const;
    std::array<double, 2> dG_dr(double xi, double sg, double t) const;
    bool newton(double x, double t, double r_eff, double* xi, double* sg, double* r1,
                double* r2) const;
    std::array<double, 2> seed_t0(double x) const;

    HodographConfig cfg_;
    Model model_;
    BiPoly F0_, F1_;
    Deriv2 f0_, f1_, h0_, h1_;
};

// Closed-form first-order t = 0 interface profile for the index-3 family in
// sigma_zero mode.
double sigma_zero_profile_xi0(double x, double r);

// Marching-squares level-set extraction: segments of f = level on the box
// [x0,x1] x [y0,y1] sampled on an n x n grid. Each element is (x1,y1,x2,y2).
std::vector<std::array<double, 4>> level_segments(const std::function<double(double, double)>& f,
                                                  double level, double x0, double x1, double y0,
                                                  double y1, int n);

}  // namespace strata

#pragma once

#include <array>
#include <vector>

#include "strata/models.hpp"

namespace strata {

// Hyperbolicity boundary |sigma| = sigma_boundary(xi) of the full model.
double sigma_boundary(double xi, double r, Scaling scaling);
// Area of the hyperbolic region between the closed form and direct quadrature.
double region_area_closed(double r, Scaling scaling);
double region_area_quadrature(double r, Scaling scaling, int panels = 8, int nodes = 32);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>* nodes, std::vector<double>* weights);

// Direction of the sonic boundary tangent at interface position xi, as the
// displacement pair (d_sigma, d_xi); Boussinesq interface units.
std::array<double, 2> sonic_tangent(double xi, double r);

struct SimpleWaveCurve {
    std::vector<std::array<double, 2>> pts;  // (xi, sigma) samples
    bool hit_boundary = false;               // stopped on the sonic boundary
    bool hit_edge = false;                   // stopped at |xi| = 1
    bool tangent_horizontal = false;         // slope -> 0 at the endpoint
    bool tangent_vertical = false;           // slope -> infinity at the endpoint
};

// Integrate a simple-wave curve d sigma / d xi = branch * sqrt(Hxx/Hss) from
// (xi0, sigma0) in arclength direction dir (+1: xi increasing at the start),
// adaptively with embedded error control, stopping at the region boundary.
SimpleWaveCurve simple_wave_curve(const Model& model, double xi0, double sigma0, int branch,
                                  int dir, double max_arclen = 8.0, double tol = 1e-10);

// First-order characteristic data in the angle variables
// theta = arcsin(xi), phi = arcsin(sigma); sign = +1 / -1 picks the branch.
struct RiemannData {
    static double R0(int sign, double th, double ph);
    static double R1(int sign, double th, double ph);
    static double lam0(int sign, double th, double ph);
    static double lam1(int sign, double th, double ph);

    static double R0_xs(int sign, double xi, double sg);
    static double lam0_xs(int sign, double xi, double sg);
    // First-order-accurate combinations at density parameter r.
    static double R_xs(int sign, double xi, double sg, double r);
    static double lam_xs(int sign, double xi, double sg, double r);
};

}  // namespace strata

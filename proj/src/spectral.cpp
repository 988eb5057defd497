#include "strata/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

double sigma_boundary(double xi, double r, Scaling scaling) {
    if (r < 0 || r >= 1) throw std::invalid_argument("sigma_boundary: r must lie in [0,1)");
    if (std::abs(xi) > 1) throw std::invalid_argument("sigma_boundary: |xi| must be <= 1");
    double m = 1 - r * xi;
    double s2 = m * m * m / (1 - r * r);
    if (scaling == Scaling::fixed_g) s2 *= 2 * r;
    return std::sqrt(s2);
}

double region_area_closed(double r, Scaling scaling) {
    if (r < 0 || r >= 1) throw std::invalid_argument("region_area_closed: r must lie in [0,1)");
    double base;
    if (r < 1e-4) {
        // series-stable branch near r = 0
        double r2 = r * r;
        base = (4.0 + 0.5 * r2 + (3.0 / 160.0) * r2 * r2) / std::sqrt(1 - r2);
    } else {
        base = 4.0 * (std::pow(1 + r, 2.5) - std::pow(1 - r, 2.5)) / (5.0 * r * std::sqrt(1 - r * r));
    }
    if (scaling == Scaling::fixed_g) base *= std::sqrt(2 * r);
    return base;
}

void gauss_legendre(int n, std::vector<double>* nodes, std::vector<double>* weights) {
    nodes->assign(n, 0.0);
    weights->assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        (*nodes)[i] = -x;
        (*nodes)[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        (*weights)[i] = w;
        (*weights)[n - 1 - i] = w;
    }
}

double region_area_quadrature(double r, Scaling scaling, int panels, int nodes) {
    std::vector<double> xs, ws;
    gauss_legendre(nodes, &xs, &ws);
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = -1.0 + 2.0 * p / panels;
        double b = a + 2.0 / panels;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < nodes; ++i)
            total += ws[i] * half * 2.0 * sigma_boundary(mid + half * xs[i], r, scaling);
    }
    return total;
}

std::array<double, 2> sonic_tangent(double xi, double r) {
    if (r < 0 || r >= 1) throw std::invalid_argument("sonic_tangent: r must lie in [0,1)");
    double dsigma = -3.0 * r * std::sqrt((1 - r * xi) / 2.0);
    double dxi = std::sqrt(2.0 * (1 - r * r));
    return {dsigma, dxi};
}

namespace {

struct Tangent {
    double tx, ts;  // unit tangent components (d xi, d sigma)
    bool outside;   // Hxx < 0: beyond the sonic boundary
};

// Unit tangent of the simple-wave curve with slope^2 = Hxx/Hss, oriented to
// continue the direction (px, ps).
Tangent wave_tangent(const Model& m, double xi, double sg, int branch, double px, double ps) {
    double hxx = m.hxx(xi, sg), hss = m.hss(xi, sg);
    if (hxx < 0) return {0, 0, true};
    double norm = hss + hxx;
    double cx = std::sqrt(hss / norm);
    double cs = branch * std::sqrt(hxx / norm);
    if (cx * px + cs * ps < 0) {
        cx = -cx;
        cs = -cs;
    }
    return {cx, cs, false};
}

}  // namespace

SimpleWaveCurve simple_wave_curve(const Model& model, double xi0, double sigma0, int branch,
                                  int dir, double max_arclen, double tol) {
    if (branch != 1 && branch != -1) throw std::invalid_argument("simple_wave_curve: branch is +-1");
    if (dir != 1 && dir != -1) throw std::invalid_argument("simple_wave_curve: dir is +-1");
    SimpleWaveCurve out;
    if (model.hxx(xi0, sigma0) < 0 || std::abs(xi0) >= 1)
        throw std::invalid_argument("simple_wave_curve: start outside the hyperbolic region");

    // Cash-Karp embedded pair on arclength.
    static const double A[6][5] = {
        {0, 0, 0, 0, 0},
        {1.0 / 5, 0, 0, 0, 0},
        {3.0 / 40, 9.0 / 40, 0, 0, 0},
        {3.0 / 10, -9.0 / 10, 6.0 / 5, 0, 0},
        {-11.0 / 54, 5.0 / 2, -70.0 / 27, 35.0 / 27, 0},
        {1631.0 / 55296, 175.0 / 512, 575.0 / 13824, 44275.0 / 110592, 253.0 / 4096}};
    static const double B5[6] = {37.0 / 378, 0, 250.0 / 621, 125.0 / 594, 0, 512.0 / 1771};
    static const double B4[6] = {2825.0 / 27648, 0,           18575.0 / 48384,
                                 13525.0 / 55296, 277.0 / 14336, 1.0 / 4};

    double x = xi0, s = sigma0;
    double px = dir, ps = 0;  // initial orientation: march in xi
    {
        Tangent t0 = wave_tangent(model, x, s, branch, px, ps);
        px = t0.tx;
        ps = t0.ts;
    }
    out.pts.push_back({x, s});
    double h = 1e-3, arc = 0.0;
    bool stopped = false;
    int guard = 0;
    while (arc < max_arclen && !stopped) {
        if (++guard > 2000000) throw std::runtime_error("simple_wave_curve: step limit exceeded");
        double kx[6], ks[6];
        bool reject_outside = false;
        for (int st = 0; st < 6; ++st) {
            double xx = x, ss = s;
            for (int j = 0; j < st; ++j) {
                xx += h * A[st][j] * kx[j];
                ss += h * A[st][j] * ks[j];
            }
            if (std::abs(xx) > 1) {
                reject_outside = true;
                break;
            }
            Tangent t = wave_tangent(model, xx, ss, branch, px, ps);
            if (t.outside) {
                reject_outside = true;
                break;
            }
            kx[st] = t.tx;
            ks[st] = t.ts;
        }
        if (reject_outside) {
            // Bisect the step until the endpoint is resolved on the boundary.
            if (h > 1e-13) {
                h *= 0.5;
                continue;
            }
            double hxx_here = model.hxx(x, s);
            out.hit_boundary = hxx_here <= tol * 100 + 1e-12;
            out.hit_edge = 1 - std::abs(x) <= 1e-9;
            if (!out.hit_boundary && !out.hit_edge) out.hit_boundary = true;
            stopped = true;
            break;
        }
        double x5 = x, s5 = s, x4 = x, s4 = s;
        for (int st = 0; st < 6; ++st) {
            x5 += h * B5[st] * kx[st];
            s5 += h * B5[st] * ks[st];
            x4 += h * B4[st] * kx[st];
            s4 += h * B4[st] * ks[st];
        }
        double err = std::hypot(x5 - x4, s5 - s4);
        if (err > tol && h > 1e-13) {
            h *= std::max(0.2, 0.9 * std::pow(tol / err, 0.25));
            continue;
        }
        x = x5;
        s = s5;
        arc += h;
        Tangent t = wave_tangent(model, x, s, branch, px, ps);
        if (!t.outside) {
            px = t.tx;
            ps = t.ts;
        }
        out.pts.push_back({x, s});
        if (err > 0) h = std::min(h * std::min(5.0, 0.9 * std::pow(tol / err, 0.2)), 0.05);
        else h = std::min(h * 5.0, 0.05);
        if (std::abs(x) >= 1 - 1e-12) {
            out.hit_edge = true;
            stopped = true;
        }
        if (t.outside) {
            out.hit_boundary = true;
            stopped = true;
        }
    }
    // Endpoint tangency classification.
    double hxx_end = model.hxx(x, s), hss_end = model.hss(x, s);
    out.tangent_horizontal = hxx_end <= 1e-6 * (std::abs(hss_end) + 1);
    out.tangent_vertical = hss_end <= 1e-6 * (std::abs(hxx_end) + 1);
    return out;
}

double RiemannData::R0(int sign, double th, double ph) { return std::cos(ph + sign * th); }

double RiemannData::lam0(int sign, double th, double ph) {
    return -std::sin(th) * std::sin(ph) + sign * 0.5 * std::cos(th) * std::cos(ph);
}

double RiemannData::lam1(int sign, double th, double ph) {
    double st = std::sin(th), ct = std::cos(th), sp = std::sin(ph), cp = std::cos(ph);
    double tp = std::tan(ph);
    return 0.5 * sp * (1 - 3 * st * st) + sign * 0.25 * st * ct * cp * (1 - 3 * tp * tp);
}

double RiemannData::R1(int sign, double th, double ph) {
    double half = std::tan(0.5 * ph);
    if (std::abs(half) >= 1.0 - 1e-12)
        throw std::domain_error("RiemannData::R1: angle outside the strip");
    double T = std::atanh(half);
    double sp = std::sin(ph), cp = std::cos(ph);
    double mix = 1.5 / cp + cp;
    if (sign > 0) {
        double sm = std::sin(th + ph), cm = std::cos(th + ph);
        return sm * sm * (sp - 3 * T) + sm * cm * mix - 2.5 * cm;
    }
    double sm = std::sin(ph - th), cm = std::cos(ph - th);
    return -sm * sm * (sp - 3 * T) - sm * cm * mix + 2.5 * cm;
}

double RiemannData::R0_xs(int sign, double xi, double sg) {
    return -sign * xi * sg + std::sqrt((1 - xi * xi) * (1 - sg * sg));
}

double RiemannData::lam0_xs(int sign, double xi, double sg) {
    return -xi * sg + sign * 0.5 * std::sqrt((1 - xi * xi) * (1 - sg * sg));
}

double RiemannData::R_xs(int sign, double xi, double sg, double r) {
    double th = std::asin(xi), ph = std::asin(sg);
    return R0(sign, th, ph) + r * R1(sign, th, ph);
}

double RiemannData::lam_xs(int sign, double xi, double sg, double r) {
    double th = std::asin(xi), ph = std::asin(sg);
    return lam0(sign, th, ph) + r * lam1(sign, th, ph);
}

}  // namespace strata

#include <doctest.h>

#include <strata/models.hpp>
#include <strata/spectral.hpp>

#include <cmath>
#include <random>
#include <sstream>

using namespace strata;

namespace {

Model full_model(double r) {
    std::ostringstream os;
    os << r;
    return Model(ModelParams{Rational(os.str()), Scaling::boussinesq, Order::full});
}

// 4th-order central difference in one slot of a two-argument function.
template <typename F>
double fd4(F f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
}

}  // namespace

TEST_CASE("sonic boundary separates hyperbolic from elliptic states") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pt(-0.95, 0.95);
    for (double r : {0.1, 0.4, 0.75}) {
        Model m = full_model(r);
        for (int t = 0; t < 60; ++t) {
            double x = pt(rng);
            double sb = sigma_boundary(x, r, Scaling::boussinesq);
            CHECK(m.is_hyperbolic(x, sb - 1e-9));
            CHECK_FALSE(m.is_hyperbolic(x, sb + 1e-9));
        }
    }
}

TEST_CASE("hyperbolic-region area: closed form against direct quadrature") {
    for (double r : {0.15, 0.3, 0.6}) {
        CAPTURE(r);
        double closed = region_area_closed(r, Scaling::boussinesq);
        double quad = region_area_quadrature(r, Scaling::boussinesq);
        CHECK(std::abs(closed - quad) < 1e-8);
        double closed_g = region_area_closed(r, Scaling::fixed_g);
        double quad_g = region_area_quadrature(r, Scaling::fixed_g);
        CHECK(std::abs(closed_g - quad_g) < 1e-8);
    }
}

TEST_CASE("area approaches the full square as the stratification vanishes") {
    CHECK(region_area_closed(0.0, Scaling::boussinesq) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(std::abs(region_area_closed(1e-6, Scaling::boussinesq) - 4.0) < 1e-9);
    // quadratic departure: (area - 4)/r^2 -> 5/2
    double r = 0.01;
    double dep = (region_area_closed(r, Scaling::boussinesq) - 4.0) / (r * r);
    CHECK(dep == doctest::Approx(2.5).epsilon(2e-3));
}

TEST_CASE("fixed-g region is the rescaled boussinesq region") {
    for (double r : {0.05, 0.2, 0.5}) {
        CAPTURE(r);
        double scale = std::sqrt(2 * r);
        CHECK(region_area_closed(r, Scaling::fixed_g) ==
              doctest::Approx(scale * region_area_closed(r, Scaling::boussinesq)).epsilon(1e-12));
        CHECK(sigma_boundary(0.3, r, Scaling::fixed_g) ==
              doctest::Approx(scale * sigma_boundary(0.3, r, Scaling::boussinesq)).epsilon(1e-12));
    }
    // and it collapses in the weak-stratification limit
    CHECK(region_area_closed(1e-4, Scaling::fixed_g) < 0.06);
}

TEST_CASE("sonic tangent degenerates at the parameter extremes") {
    // r = 0: the boundary is flat, displacement purely in the interface slot
    auto t0 = sonic_tangent(0.2, 0.0);
    CHECK(t0[0] == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(std::abs(t0[1]) > 1.0);

    // r -> 1: displacement turns purely into the shear slot
    auto t1 = sonic_tangent(0.2, 1.0 - 1e-12);
    CHECK(std::abs(t1[1]) < 1e-5);
    CHECK(std::abs(t1[0]) > 0.1);
    CHECK_THROWS(sonic_tangent(0.2, 1.0));

    // small r: slope d sigma / d xi approaches -3r/2
    double r = 0.01;
    auto ts = sonic_tangent(0.0, r);
    CHECK(ts[0] / ts[1] == doctest::Approx(-1.5 * r).epsilon(2e-4));
}

TEST_CASE("simple-wave curves at the symmetric limit are angle translates") {
    // the slope field is only Hoelder at the region edge, so the invariant is
    // checked away from the endpoint with the integrator's global accuracy
    Model m = full_model(0.0);
    const double s0 = 0.3;
    const double c = std::asin(s0);
    auto interior = [](const std::array<double, 2>& p) {
        return std::max(std::abs(p[0]), std::abs(p[1])) <= 0.95;
    };

    auto up = simple_wave_curve(m, 0.0, s0, +1, +1);
    REQUIRE(up.pts.size() > 10);
    int seen = 0;
    for (const auto& p : up.pts) {
        if (!interior(p)) continue;
        CHECK(std::abs(std::asin(p[1]) - std::asin(p[0]) - c) < 1e-6);
        ++seen;
    }
    CHECK(seen > 5);
    CHECK(up.hit_boundary);
    CHECK(up.tangent_horizontal);
    CHECK_FALSE(up.tangent_vertical);
    CHECK(up.pts.back()[1] > 1.0 - 1e-5);  // ends on the sonic line

    auto dn = simple_wave_curve(m, 0.0, s0, -1, +1);
    REQUIRE(dn.pts.size() > 10);
    seen = 0;
    for (const auto& p : dn.pts) {
        if (!interior(p)) continue;
        CHECK(std::abs(std::asin(p[1]) + std::asin(p[0]) - c) < 1e-6);
        ++seen;
    }
    CHECK(seen > 5);
    CHECK(dn.hit_edge);
    CHECK(dn.tangent_vertical);
    CHECK(dn.pts.back()[0] > 1.0 - 1e-5);  // ends at the interface pinch
}

TEST_CASE("simple-wave curves stay inside the hyperbolic region off the limit") {
    Model m = full_model(0.125);
    auto c = simple_wave_curve(m, 0.1, 0.2, +1, +1);
    REQUIRE(c.pts.size() > 5);
    for (const auto& p : c.pts) {
        // interior samples remain hyperbolic (endpoint may sit on the boundary)
        if (&p == &c.pts.back()) continue;
        CHECK(m.is_hyperbolic(p[0], p[1]));
    }
    CHECK((c.hit_boundary || c.hit_edge));
}

TEST_CASE("characteristic data in angle variables has the product-to-sum form") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ang(-1.2, 1.2);
    for (int t = 0; t < 200; ++t) {
        double th = ang(rng), ph = ang(rng);
        for (int sign : {+1, -1}) {
            CHECK(RiemannData::R0(sign, th, ph) ==
                  doctest::Approx(std::cos(ph + sign * th)).epsilon(1e-13));
            CHECK(RiemannData::lam0(sign, th, ph) ==
                  doctest::Approx(-std::sin(th) * std::sin(ph) +
                                  sign * 0.5 * std::cos(th) * std::cos(ph))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("speeds are fixed linear combinations of the invariants") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> pt(-0.9, 0.9);
    for (int t = 0; t < 500; ++t) {
        double x = pt(rng), s = pt(rng);
        double Rp = RiemannData::R0_xs(+1, x, s);
        double Rm = RiemannData::R0_xs(-1, x, s);
        CHECK(RiemannData::lam0_xs(+1, x, s) ==
              doctest::Approx((3 * Rp - Rm) / 4).epsilon(1e-12));
        CHECK(RiemannData::lam0_xs(-1, x, s) ==
              doctest::Approx((Rp - 3 * Rm) / 4).epsilon(1e-12));
        // angle and physical parameterizations agree
        CHECK(RiemannData::R0(+1, std::asin(x), std::asin(s)) ==
              doctest::Approx(Rp).epsilon(1e-13));
    }
}

TEST_CASE("first-order speeds track the true eigenvalues to quadratic accuracy") {
    const double pts[][2] = {{0.2, 0.3}, {-0.35, 0.15}, {0.1, -0.4}, {-0.25, -0.3}};
    for (int sign : {+1, -1}) {
        for (auto& p : pts) {
            double prev_gap = 0;
            int step = 0;
            for (double r : {0.02, 0.04}) {
                Model m = full_model(r);
                double lm, lp;
                REQUIRE(m.speeds(p[0], p[1], &lm, &lp));
                double truth = sign > 0 ? lp : lm;
                double gap = std::abs(RiemannData::lam_xs(sign, p[0], p[1], r) - truth);
                if (step > 0) {
                    CHECK(gap / prev_gap > 3.0);
                    CHECK(gap / prev_gap < 5.5);
                }
                prev_gap = gap;
                ++step;
            }
        }
    }
}

TEST_CASE("corrected invariant gradients stay characteristic to quadratic accuracy") {
    // residual of grad(R) (A - lambda I) should shrink like r^2
    const double h = 1e-3;
    const double pts[][2] = {{0.2, 0.25}, {-0.3, 0.1}, {0.15, -0.35}};
    for (int sign : {+1, -1}) {
        for (auto& p : pts) {
            CAPTURE(sign);
            CAPTURE(p[0]);
            double prev = 0;
            int step = 0;
            for (double r : {0.02, 0.04}) {
                Model m = full_model(r);
                auto A = m.quasilinear(p[0], p[1]);
                double lam = RiemannData::lam_xs(sign, p[0], p[1], r);
                double gx = fd4([&](double x) { return RiemannData::R_xs(sign, x, p[1], r); },
                                p[0], h);
                double gs = fd4([&](double s) { return RiemannData::R_xs(sign, p[0], s, r); },
                                p[1], h);
                double r1 = gx * (A[0][0] - lam) + gs * A[1][0];
                double r2 = gx * A[0][1] + gs * (A[1][1] - lam);
                double res = std::hypot(r1, r2);
                if (step > 0) {
                    CHECK(res / prev > 2.8);
                    CHECK(res / prev < 5.8);
                }
                prev = res;
                ++step;
            }
            CHECK(prev < 5e-3);  // absolute size of the quadratic remainder at r=0.04
        }
    }
}

TEST_CASE("gauss-legendre rule integrates high-degree monomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(5, &x, &w);
    REQUIRE(x.size() == 5);
    double sum_w = 0, m8 = 0, m9 = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sum_w += w[i];
        m8 += w[i] * std::pow(x[i], 8);
        m9 += w[i] * std::pow(x[i], 9);
    }
    CHECK(sum_w == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(m8 == doctest::Approx(2.0 / 9.0).epsilon(1e-13));
    CHECK(std::abs(m9) < 1e-15);  // odd moments vanish by symmetry
}

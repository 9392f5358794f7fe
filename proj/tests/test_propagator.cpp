#include "doctest.h"
#include "helpers.hpp"
#include "rzk/propagator.hpp"

using namespace rzk;

namespace {

GridSpec gp() { return GridSpec::make(128, 64, 12.0, 8.0); }

}  // namespace

TEST_CASE("linear evolution basics")
{
    const GridSpec g = gp();
    const Field2D phi = testing::gaussian(g);
    CHECK((evolve_linear(phi, 0.0, 1.0).values - phi.values).abs().maxCoeff() < 1e-14);
    for (double t : {0.3, 2.0, 17.0}) CHECK(testing::rel(l2_norm(evolve_linear(phi, t, 1.0)), l2_norm(phi)) < 1e-12);
    CHECK_THROWS_AS(evolve_linear(phi, -1.0, 1.0), ConfigError);

    // single grid mode (xi1, eta1)
    const double xi1 = std::numbers::pi / g.lx, eta1 = std::numbers::pi / g.ly;
    const Field2D m = sample([&](double x, double y) { return std::exp(cplx(0, xi1 * x + eta1 * y)); }, g);
    const double t = 1.7;
    const Field2D e = evolve_linear(m, t, 1.0);
    const cplx phase = e.values(3, 5) / m.values(3, 5);
    CHECK(std::abs(phase - std::exp(cplx(0, t * xi1 * eta1 * eta1 / (1 + xi1)))) < 1e-12);
}

TEST_CASE("group property")
{
    const GridSpec g = gp();
    const Field2D phi = testing::gaussian(g);
    CHECK(group_property_check(phi, 0, 0) == 0.0);
    CHECK(group_property_check(phi, 1, 2) < 1e-11 * l2_norm(phi));
    // inverse through the conjugate symbol
    Spectrum2D F = evolve_linear(forward_transform(phi), 3.0, 1.0);
    const RArray2 rate = symbol_on_grid(linear_symbol(1.0), g).imag();
    F.coeffs *= (-3.0 * rate).unaryExpr([](double p) { return std::polar(1.0, p); });
    CHECK((inverse_transform(F).values - phi.values).abs().maxCoeff() < 1e-12);
}

TEST_CASE("frozen column and Sobolev isometry")
{
    const GridSpec g = gp();
    const Field2D phi = testing::random_smooth(g, 7);
    const Spectrum2D P = forward_transform(phi);
    const Spectrum2D E = evolve_linear(P, 5.0, 0.7);
    CHECK((E.coeffs.row(0) - P.coeffs.row(0)).abs().maxCoeff() == 0.0);
    for (double s1 : {0.0, 1.0, 2.5})
        CHECK(testing::rel(sobolev_aniso(E, s1, 3.0), sobolev_aniso(P, s1, 3.0)) < 1e-12);
}

TEST_CASE("xi derivatives: printed values")
{
    const auto d1 = symbol_deriv_xi(1);
    CHECK(std::abs(d1.regular_part(1, 1, 1) - cplx(0, 0.25) * std::exp(cplx(0, 0.5))) < 1e-15);
    CHECK(d1.delta_terms.empty());
    const auto d2 = symbol_deriv_xi(2);
    CHECK(d2.delta_terms.empty());
    CHECK(std::abs(d2.regular_part(0.8, 1.3, 0.0)) == 0.0);
    // regular parts of orders 2..4 with b = 1, written out
    const double t = 0.6, xi = 0.9, eta = 1.2;
    const cplx it(0, t), F = group_symbol(t, xi, eta);
    const double q = 1 + xi, e2 = eta * eta;
    const cplx r2 = -2.0 * it / std::pow(q, 3) * e2 + it * it / std::pow(q, 4) * e2 * e2;
    CHECK(std::abs(d2.regular_part(t, xi, eta) - r2 * F) < 1e-14);
    const cplx r3 = 6.0 * it / std::pow(q, 4) * e2 - 6.0 * it * it / std::pow(q, 5) * e2 * e2 +
                    std::pow(it, 3) / std::pow(q, 6) * std::pow(eta, 6);
    CHECK(std::abs(symbol_deriv_xi(3).regular_part(t, xi, eta) - r3 * F) < 1e-13);
    const cplx r4 = -24.0 * it / std::pow(q, 5) * e2 + 36.0 * it * it / std::pow(q, 6) * e2 * e2 -
                    12.0 * std::pow(it, 3) / std::pow(q, 7) * std::pow(eta, 6) + std::pow(it, 4) / std::pow(q, 8) * std::pow(eta, 8);
    CHECK(std::abs(symbol_deriv_xi(4).regular_part(t, xi, eta) - r4 * F) < 1e-13);
    CHECK_THROWS_AS(symbol_deriv_xi(5), ConfigError);
    CHECK_THROWS_AS(symbol_deriv_xi(0), ConfigError);
}

TEST_CASE("xi derivatives match finite differences")
{
    const double t = 0.7, xi = 2.0, eta = 1.5;
    for (double b : {1.0, 0.5, 2.0})
        for (int j = 1; j <= 4; ++j) {
            const auto d = symbol_deriv_xi(j, b);
            const cplx fd = testing::richardson_derivative([&](double x) { return group_symbol(t, x, eta, b); }, xi, j, 0.1);
            const cplx ex = d.regular_part(t, xi, eta);
            CHECK(std::abs(fd - ex) < 1e-6 * std::abs(ex));
        }
}

TEST_CASE("delta coefficients are the jumps of the previous order")
{
    // The delta weight in order j+1 is the jump of the j-th derivative at 0,
    // measured here with one-sided finite differences.
    const double b = 1.0;
    for (double t : {0.5, 1.3})
        for (double eta : {0.7, 1.9}) {
            auto F = [&](double x) { return group_symbol(t, x, eta, b); };
            auto side = [&](int j, double s) {
                // Lagrange extrapolation to 0 of one-sided finite-difference derivatives
                std::vector<double> xs;
                std::vector<cplx> ys;
                for (int m = 1; m <= 8; ++m) {
                    xs.push_back(s * 0.03 * m);
                    ys.push_back(testing::richardson_derivative(F, xs.back(), j, 0.01));
                }
                cplx acc = 0.0;
                for (std::size_t a = 0; a < xs.size(); ++a) {
                    double w = 1.0;
                    for (std::size_t c = 0; c < xs.size(); ++c)
                        if (c != a) w *= (0.0 - xs[c]) / (xs[a] - xs[c]);
                    acc += w * ys[a];
                }
                return acc;
            };
            const cplx jump2 = side(2, 1) - side(2, -1);
            const cplx jump3 = side(3, 1) - side(3, -1);
            const auto d3 = symbol_deriv_xi(3, b);
            REQUIRE(d3.delta_terms.size() == 1);
            CHECK(d3.delta_terms[0].derivative_order == 0);
            const cplx c3 = d3.delta_terms[0].coefficient(t, eta);
            CHECK(std::abs(c3 - cplx(0, -4 * t * eta * eta)) < 1e-12);
            CHECK(std::abs(c3 - jump2) < 1e-4 * std::abs(c3));
            const auto d4 = symbol_deriv_xi(4, b);
            REQUIRE(d4.delta_terms.size() == 2);
            CHECK(d4.delta_terms[0].derivative_order == 1);
            CHECK(std::abs(d4.delta_terms[0].coefficient(t, eta) - c3) < 1e-12);
            CHECK(d4.delta_terms[1].derivative_order == 0);
            const cplx c4 = d4.delta_terms[1].coefficient(t, eta);
            const cplx it(0, t);
            CHECK(std::abs(c4 - (-12.0) * it * it * std::pow(eta, 4)) < 1e-12);
            CHECK(std::abs(c4 - jump3) < 1e-4 * std::abs(c4));
        }
}

TEST_CASE("eta derivatives")
{
    const auto d1 = symbol_deriv_eta(1);
    const double t = 0.9, xi = 0.4, eta = 1.1;
    const cplx c(0, t * xi / (1 + xi));
    CHECK(std::abs(d1.regular_part(t, xi, eta) - 2.0 * c * eta * group_symbol(t, xi, eta)) < 1e-15);
    CHECK(std::abs(symbol_deriv_eta(2).regular_part(1, 1, 0) - cplx(0, 1)) < 1e-15);
    for (int j = 1; j <= 6; ++j) {
        CHECK(symbol_deriv_eta(j).delta_terms.empty());
        const cplx fd = testing::richardson_derivative([](double e) { return group_symbol(0.7, 2.0, e); }, 1.5, j, 0.1);
        const cplx ex = symbol_deriv_eta(j).regular_part(0.7, 2.0, 1.5);
        CHECK(std::abs(fd - ex) < 1e-6 * std::abs(ex));
    }
    // even orders: only even powers of eta, every term carries c^{j/2 + k}
    const auto Q = eta_derivative_coefficients(4);
    for (std::size_t p = 0; p < Q.size(); ++p)
        for (std::size_t q = 0; q < Q[p].size(); ++q)
            if (Q[p][q] != 0.0) {
                CHECK(p % 2 == 0);
                CHECK(q == 2 + p / 2);
                CHECK(Q[p][q] > 0);
            }
}

TEST_CASE("growth curves")
{
    const GridSpec g = gp();
    const Field2D phi = testing::gaussian(g);
    const auto c0 = weighted_growth_curve(phi, {1, 2, 0, 0}, {0, 1, 2, 4});
    for (double v : c0.values) CHECK(testing::rel(v, c0.values[0]) < 1e-12);
    CHECK(std::abs(c0.fitted_degree) < 1e-10);
    const auto c1 = weighted_growth_curve(phi, {1, 3, 1, 0}, {0, 1, 2});
    CHECK(testing::rel(c1.values[0], f_space_norm(phi, {1, 3, 1, 0})) < 1e-14);
    CHECK(loglog_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0));
}

TEST_CASE("zero-mean projection")
{
    const GridSpec g = gp();
    const Field2D phi = testing::gaussian(g);
    const Field2D pz = project_zero_mean_x(phi);
    const Spectrum2D P = forward_transform(pz);
    CHECK(P.coeffs.row(0).abs().maxCoeff() < 1e-14 * P.coeffs.abs().maxCoeff());
    const Field2D odd = sample([](double x, double y) { return x * std::exp(-x * x - y * y); }, g);
    CHECK((project_zero_mean_x(odd).values - odd.values).abs().maxCoeff() < 1e-15);
}

TEST_CASE("moment scan on odd data")
{
    const GridSpec g = GridSpec::make(64, 32, 8.0, 6.0);
    const auto s = moment_condition_scan([](double x, double y) { return x * std::exp(-x * x - y * y); }, g, {0.0, 0.5});
    for (std::size_t i = 0; i < s.times.size(); ++i) {
        CHECK(testing::rel(s.raw_base[i], s.projected_base[i]) < 1e-12);
        CHECK(testing::rel(s.raw_doubled[i], s.projected_doubled[i]) < 1e-12);
    }
    CHECK(std::abs(s.raw_ratio[0] - 1.0) < 1e-10);
    for (double v : s.phi_hat0_abs) CHECK(v < 1e-15);
}

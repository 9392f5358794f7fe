#include "doctest.h"
#include "helpers.hpp"
#include "rzk/multipliers.hpp"
#include "rzk/oracles.hpp"

using namespace rzk;

namespace {

GridSpec g1() { return GridSpec::make(64, 16, 6.0, 4.0); }

double max_diff(const Field2D& a, const Field2D& b) { return (a.values - b.values).abs().maxCoeff(); }

Field2D mode(const GridSpec& g, bool sine, int k = 1)
{
    const double xi = k * std::numbers::pi / g.lx;
    return sample([=](double x, double) { return sine ? std::sin(xi * x) : std::cos(xi * x); }, g);
}

}  // namespace

TEST_CASE("identity and derivative symbols")
{
    const GridSpec g = g1();
    const Field2D f = testing::random_field(g, 3);
    CHECK(max_diff(apply_multiplier(f, identity_symbol()), f) < 1e-12 * max_abs(f));
    const double xi1 = std::numbers::pi / g.lx;
    const Field2D d = apply_multiplier(mode(g, true), dx_symbol());
    CHECK(max_diff(d, xi1 * mode(g, false)) < 1e-10);
}

TEST_CASE("Hilbert transform")
{
    const GridSpec g = g1();
    CHECK(max_diff(apply_multiplier(mode(g, false), hilbert_symbol()), mode(g, true)) < 1e-10);
    const Field2D c = sample([](double, double y) { return std::exp(-y * y); }, g);
    CHECK(max_abs(hilbert_x(c)) < 1e-12);
    const Field2D gy = sample([&](double x, double y) { return std::cos(std::numbers::pi / g.lx * x) * std::exp(-y * y); }, g);
    const Field2D sy = sample([&](double x, double y) { return std::sin(std::numbers::pi / g.lx * x) * std::exp(-y * y); }, g);
    CHECK(max_diff(hilbert_x(gy), sy) < 1e-10);

    const Field2D f = testing::random_field(g, 5, true);
    Spectrum2D F = forward_transform(f);
    Spectrum2D zero(g);
    zero.coeffs.row(0) = F.coeffs.row(0);
    zero.coeffs.row(g.nx / 2) = F.coeffs.row(g.nx / 2);  // the Nyquist row is self-conjugate, so sign is 0 there
    const Field2D hh = hilbert_x(hilbert_x(f));
    CHECK(max_diff(hh, inverse_transform(zero) - f) < 1e-10);
    CHECK(l2_norm(hilbert_x(f)) <= l2_norm(f) * (1 + 1e-12));
    const Field2D fz = inverse_transform(Spectrum2D(g, F.coeffs - zero.coeffs));
    CHECK(testing::rel(l2_norm(hilbert_x(fz)), l2_norm(fz)) < 1e-12);
}

TEST_CASE("resolvent symbol")
{
    const Symbol r = resolvent_symbol(1.0);
    CHECK(r(0.0, 3.0) == cplx(1.0));
    CHECK(r(1.0, 0.0) == cplx(0.5));
    CHECK(r(-2.5, 1.0) == r(2.5, 1.0));
    CHECK_THROWS_AS(resolvent_symbol(0.0), ConfigError);
}

TEST_CASE("fractional derivative")
{
    const GridSpec g = g1();
    const double xi1 = std::numbers::pi / g.lx;
    CHECK(max_diff(frac_deriv(mode(g, true), 2.0), xi1 * xi1 * mode(g, true)) < 1e-10);
    const Field2D f = testing::gaussian(g);
    CHECK(max_diff(frac_deriv(f, 1.0), hilbert_x(apply_multiplier(f, dx_symbol()))) < 1e-10);
    CHECK(max_diff(frac_deriv(frac_deriv(f, 0.5), 0.5), frac_deriv(f, 1.0)) < 1e-10);
    CHECK_THROWS_AS(frac_deriv(f, 0.0), ConfigError);
}

TEST_CASE("Bessel potential")
{
    const GridSpec g = g1();
    const double xi1 = std::numbers::pi / g.lx;
    const Field2D f = testing::gaussian(g);
    CHECK(max_diff(bessel_potential(f, 0.0, Axis::isotropic), f) < 1e-12);
    CHECK(max_diff(bessel_potential(mode(g, true), 2.0, Axis::x), (1 + xi1 * xi1) * mode(g, true)) < 1e-10);
    for (Axis a : {Axis::x, Axis::y, Axis::isotropic})
        CHECK(max_diff(bessel_potential(bessel_potential(f, 1.7, a), -1.7, a), f) < 1e-10);
}

TEST_CASE("nonlinear and linear symbols")
{
    const Symbol n = nonlinear_multiplier(1.0, 1.0);
    CHECK(n(0.0, 2.0) == cplx(0.0));
    CHECK(std::abs(n(1.0, 0.0) - cplx(0.0, -0.5)) < 1e-15);
    const Symbol n2 = nonlinear_multiplier(3.0, 0.5);
    for (double xi = -100; xi <= 100; xi += 0.37) CHECK(std::abs(n2(xi, 0.0)) < 3.0 / 0.5);
    CHECK(std::abs(nonlinear_multiplier(1.0, 1.0, true)(1.0, 2.0) - cplx(0.0, 2.0)) < 1e-15);
    const Symbol l = linear_symbol(1.0);
    CHECK(std::abs(l(1.0, 2.0) - cplx(0.0, 2.0)) < 1e-15);
    CHECK(l(0.0, 5.0) == cplx(0.0));
    CHECK(l(5.0, 0.0) == cplx(0.0));
    for (double xi = -3; xi <= 3; xi += 0.5) CHECK(l(xi, 1.3).real() == 0.0);
    CHECK_THROWS_AS(linear_symbol(-1.0), ConfigError);
    CHECK_THROWS_AS(nonlinear_multiplier(1.0, 0.0), ConfigError);
}

TEST_CASE("non-finite symbol names the wavenumber")
{
    const GridSpec g = g1();
    const Symbol bad{"bad", [](double xi, double) { return cplx(1.0 / xi); }, {}};
    CHECK_THROWS_AS(apply_multiplier(testing::gaussian(g), bad), ConfigError);
    try {
        symbol_on_grid(bad, g);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("xi=0") != std::string::npos);
    }
}

TEST_CASE("real symbols keep real fields real and act linearly")
{
    const GridSpec g = g1();
    const Field2D f = testing::random_smooth(g, 1), h = testing::random_smooth(g, 2);
    for (const Symbol& m : {hilbert_symbol(), resolvent_symbol(0.7), frac_deriv_symbol(0.3, Axis::x),
                            bessel_symbol(-1.0, Axis::isotropic), nonlinear_multiplier(2.0, 1.0), dy_symbol()}) {
        const Field2D r = apply_multiplier(f, m);
        CHECK(r.values.imag().abs().maxCoeff() < 1e-10 * std::max(max_abs(r), 1e-300));
        const Field2D lhs = apply_multiplier(f + h, m);
        const Field2D rhs = apply_multiplier(f, m) + apply_multiplier(h, m);
        CHECK(max_diff(lhs, rhs) < 1e-12 * std::max(1.0, max_abs(lhs)));
    }
}

TEST_CASE("FFT Hilbert matches principal-value quadrature")
{
    const int n = 40960;
    const double l = 400.0;
    auto f = [](double x) { return cplx(1.0 / std::cosh(x)); };
    const Profile1D p = make_profile(f, n, l);
    const CArray1 h = hilbert_1d(p);
    double num = 0.0, den = 0.0, worst = 0.0;
    for (int i = n / 2 - 400; i <= n / 2 + 400; i += 40) {
        const cplx q = hilbert_pv_quadrature(p, p.xs(i));
        num += std::norm(q - h(i));
        den += std::norm(h(i));
        worst = std::max(worst, std::abs(q - h(i)));
    }
    CHECK(std::sqrt(num / den) < 1e-3);
    CHECK(worst < 1e-3);
}

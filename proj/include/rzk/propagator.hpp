#ifndef RZK_PROPAGATOR_HPP
#define RZK_PROPAGATOR_HPP

#include <functional>
#include <map>
#include <vector>

#include "rzk/grid.hpp"
#include "rzk/norms.hpp"

namespace rzk {

/// F(t, xi, eta) = exp(i t xi eta^2 / (1 + b|xi|)).
cplx group_symbol(double t, double xi, double eta, double b_coef = 1.0);

Spectrum2D evolve_linear(const Spectrum2D& phi, double t, double b_coef);
Field2D evolve_linear(const Field2D& phi, double t, double b_coef);

/// ||E(t1)E(t2)phi - E(t1+t2)phi||_{L2}.
double group_property_check(const Field2D& phi, double t1, double t2, double b_coef = 1.0);

/// coefficient(t, eta) * delta^{(derivative_order)} at xi = 0.
struct DeltaTerm {
    int derivative_order = 0;
    std::function<cplx(double, double)> coefficient;
};

struct SymbolDerivative {
    std::function<cplx(double, double, double)> regular_part;  // (t, xi, eta), xi != 0 for xi-derivatives
    std::vector<DeltaTerm> delta_terms;
};

/// d^j F / d xi^j for j in 1..4.
SymbolDerivative symbol_deriv_xi(int j, double b_coef = 1.0);
/// d^j F / d eta^j for j >= 1. Never carries delta terms.
SymbolDerivative symbol_deriv_eta(int j, double b_coef = 1.0);

/// Coefficients of d^j F / d eta^j = F * sum c[p][q] eta^p (i t xi/(1+b|xi|))^q.
std::vector<std::vector<double>> eta_derivative_coefficients(int j);

struct GrowthCurve {
    std::vector<double> times;
    std::vector<double> values;
    double fitted_degree = 0.0;
};

enum class GrowthRegressor { log1p_t, log_t };

/// Least-squares slope of log(y) against log(x) (or log(1+x)).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y,
                    GrowthRegressor reg = GrowthRegressor::log_t);

/// (t, ||E(t)phi||_F) with the degree fitted over the upper half of the time range.
GrowthCurve weighted_growth_curve(const Field2D& phi, const NormIndices& idx, const std::vector<double>& times,
                                  double b_coef = 1.0, GrowthRegressor reg = GrowthRegressor::log1p_t);

/// ||  |x|^r f ||_{L2}.
double x_weighted_l2(const Field2D& f, double r);

/// Removes the xi = 0 line of the spectrum with a localized compensator:
/// phi - m(y) psi(x), m(y) = integral of phi in x, psi a normalized Gaussian of
/// width `width`.
Field2D project_zero_mean_x(const Field2D& phi, double width = 2.0);

struct MomentScan {
    std::vector<double> times;
    std::vector<double> eta;
    std::vector<double> phi_hat0_abs;  // |phi^(0, eta)| on the base box
    std::vector<double> raw_base, raw_doubled;              // ||x^r E(t) phi|| on lx and 2 lx
    std::vector<double> projected_base, projected_doubled;  // same for the projection
    std::vector<double> raw_ratio, projected_ratio;
};

/// Runs the x^r-weighted curves of phi and of its projection on the given box
/// and on the box with lx and nx doubled.
MomentScan moment_condition_scan(const std::function<double(double, double)>& phi, const GridSpec& spec,
                                 const std::vector<double>& times, double r = 3.0, double b_coef = 1.0);

}  // namespace rzk

#endif  // RZK_PROPAGATOR_HPP

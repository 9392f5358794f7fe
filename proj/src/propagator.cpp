#include "rzk/propagator.hpp"

#include <numeric>

#include "rzk/multipliers.hpp"

namespace rzk {

cplx group_symbol(double t, double xi, double eta, double b_coef)
{
    return std::exp(cplx(0.0, t * xi * eta * eta / (1.0 + b_coef * std::abs(xi))));
}

Spectrum2D evolve_linear(const Spectrum2D& phi, double t, double b_coef)
{
    if (!(t >= 0)) throw ConfigError("evolution time must be >= 0");
    if (!(b_coef > 0)) throw ConfigError("b must be > 0");
    const RArray2 rate = symbol_on_grid(linear_symbol(b_coef), phi.spec).imag();
    return Spectrum2D(phi.spec, phi.coeffs * (rate * t).unaryExpr([](double ph) { return std::polar(1.0, ph); }));
}

Field2D evolve_linear(const Field2D& phi, double t, double b_coef)
{
    return inverse_transform(evolve_linear(forward_transform(phi), t, b_coef));
}

double group_property_check(const Field2D& phi, double t1, double t2, double b_coef)
{
    const Spectrum2D P = forward_transform(phi);
    const Spectrum2D a = evolve_linear(evolve_linear(P, t2, b_coef), t1, b_coef);
    const Spectrum2D c = evolve_linear(P, t1 + t2, b_coef);
    return l2_norm(Spectrum2D(phi.spec, a.coeffs - c.coeffs));
}

namespace {

// Monomials in theta_k = z g^{(k)}, z = i t eta^2, keyed by exponent vectors
// (index 0 unused).
using Poly = std::map<std::vector<int>, double>;

constexpr int kMaxXiOrder = 4;

std::vector<Poly> xi_polys(int jmax)
{
    std::vector<Poly> P(jmax + 1);
    std::vector<int> e1(jmax + 2, 0);
    e1[1] = 1;
    P[1][e1] = 1.0;
    for (int j = 1; j < jmax; ++j) {
        Poly next;
        for (const auto& [alpha, c] : P[j]) {
            for (int k = 1; k <= jmax; ++k) {
                if (alpha[k] == 0) continue;
                auto beta = alpha;
                beta[k] -= 1;
                beta[k + 1] += 1;
                next[beta] += c * alpha[k];
            }
            auto beta = alpha;
            beta[1] += 1;
            next[beta] += c;
        }
        P[j + 1] = std::move(next);
    }
    return P;
}

// g^{(k)} for g = xi/(1+b|xi|); s is sign(xi) (pass +-1 for one-sided limits at 0).
double g_deriv(int k, double xi, double s, double b)
{
    double fact = 1.0;
    for (int m = 2; m <= k; ++m) fact *= m;
    const double sign = ((k + 1) % 2 == 0) ? 1.0 : -s;
    return sign * fact * std::pow(b, k - 1) / std::pow(1.0 + b * std::abs(xi), k + 1);
}

cplx eval_poly(const Poly& P, cplx z, double xi, double s, double b)
{
    cplx acc = 0.0;
    for (const auto& [alpha, c] : P) {
        cplx term = c;
        for (std::size_t k = 1; k < alpha.size(); ++k) {
            if (alpha[k] == 0) continue;
            term *= std::pow(z * g_deriv(int(k), xi, s, b), alpha[k]);
        }
        acc += term;
    }
    return acc;
}

}  // namespace

SymbolDerivative symbol_deriv_xi(int j, double b_coef)
{
    if (j < 1 || j > kMaxXiOrder) throw ConfigError("xi-derivative order must be in 1..4");
    if (!(b_coef > 0)) throw ConfigError("b must be > 0");
    const auto polys = xi_polys(j);
    SymbolDerivative d;
    const Poly Pj = polys[j];
    d.regular_part = [Pj, b_coef](double t, double xi, double eta) {
        const cplx z(0.0, t * eta * eta);
        return eval_poly(Pj, z, xi, sgn(xi), b_coef) * group_symbol(t, xi, eta, b_coef);
    };
    // A jump of the regular part of order m at xi = 0 produces a delta in
    // order m+1, which later derivatives differentiate. F(0) = 1.
    for (int m = 2; m < j; ++m) {
        const Poly Pm = polys[m];
        DeltaTerm dt;
        dt.derivative_order = j - 1 - m;
        dt.coefficient = [Pm, b_coef](double t, double eta) {
            const cplx z(0.0, t * eta * eta);
            return eval_poly(Pm, z, 0.0, 1.0, b_coef) - eval_poly(Pm, z, 0.0, -1.0, b_coef);
        };
        d.delta_terms.push_back(std::move(dt));
    }
    return d;
}

std::vector<std::vector<double>> eta_derivative_coefficients(int j)
{
    if (j < 0) throw ConfigError("eta-derivative order must be >= 0");
    std::vector<std::vector<double>> Q(j + 1, std::vector<double>(j + 1, 0.0));
    Q[0][0] = 1.0;
    for (int m = 0; m < j; ++m) {
        std::vector<std::vector<double>> next(j + 1, std::vector<double>(j + 1, 0.0));
        for (int p = 0; p <= j; ++p) {
            for (int q = 0; q <= j; ++q) {
                const double c = Q[p][q];
                if (c == 0.0) continue;
                if (p > 0) next[p - 1][q] += c * p;
                if (p + 1 <= j && q + 1 <= j) next[p + 1][q + 1] += 2.0 * c;
            }
        }
        Q = std::move(next);
    }
    return Q;
}

SymbolDerivative symbol_deriv_eta(int j, double b_coef)
{
    if (j < 1) throw ConfigError("eta-derivative order must be >= 1");
    if (!(b_coef > 0)) throw ConfigError("b must be > 0");
    const auto Q = eta_derivative_coefficients(j);
    SymbolDerivative d;
    d.regular_part = [Q, b_coef](double t, double xi, double eta) {
        const cplx c(0.0, t * xi / (1.0 + b_coef * std::abs(xi)));
        cplx acc = 0.0;
        for (std::size_t p = 0; p < Q.size(); ++p)
            for (std::size_t q = 0; q < Q[p].size(); ++q)
                if (Q[p][q] != 0.0) acc += Q[p][q] * std::pow(eta, int(p)) * std::pow(c, int(q));
        return acc * group_symbol(t, xi, eta, b_coef);
    };
    return d;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y, GrowthRegressor reg)
{
    if (x.size() != y.size() || x.size() < 2) throw InputError("slope fit needs at least two matched points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xv = reg == GrowthRegressor::log1p_t ? 1.0 + x[i] : x[i];
        if (!(xv > 0) || !(y[i] > 0)) throw InputError("slope fit needs positive data");
        lx[i] = std::log(xv);
        ly[i] = std::log(y[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (lx[i] - mx) * (ly[i] - my);
        sxx += (lx[i] - mx) * (lx[i] - mx);
    }
    if (sxx == 0.0) throw InputError("slope fit needs distinct abscissae");
    return sxy / sxx;
}

GrowthCurve weighted_growth_curve(const Field2D& phi, const NormIndices& idx, const std::vector<double>& times,
                                  double b_coef, GrowthRegressor reg)
{
    idx.validate();
    if (times.empty()) throw InputError("growth curve needs at least one time");
    const double n0 = f_space_norm(phi, idx);
    if (!std::isfinite(n0)) throw InputError("initial weighted norm is not finite");
    GrowthCurve c;
    c.times = times;
    const Spectrum2D P = forward_transform(phi);
    for (double t : times) c.values.push_back(f_space_norm(inverse_transform(evolve_linear(P, t, b_coef)), idx));
    const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
    const double mid = 0.5 * (*lo + *hi);
    std::vector<double> fx, fy;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= mid) {
            fx.push_back(times[i]);
            fy.push_back(c.values[i]);
        }
    }
    if (fx.size() >= 2) c.fitted_degree = loglog_slope(fx, fy, reg);
    return c;
}

double x_weighted_l2(const Field2D& f, double r)
{
    const auto& g = f.spec;
    const RArray1 w = g.xs().abs().pow(r);
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) acc += w(i) * w(i) * std::norm(f.values(i, j));
    return std::sqrt(acc * g.dx() * g.dy());
}

Field2D project_zero_mean_x(const Field2D& phi, double width)
{
    if (!(width > 0)) throw ConfigError("compensator width must be > 0");
    const auto& g = phi.spec;
    RArray1 psi(g.nx);
    for (int i = 0; i < g.nx; ++i) psi(i) = std::exp(-g.x(i) * g.x(i) / (width * width));
    psi /= psi.sum() * g.dx();
    Field2D out = phi;
    for (int j = 0; j < g.ny; ++j) {
        const cplx m = phi.values.col(j).sum() * g.dx();
        out.values.col(j) -= m * psi.cast<cplx>();
    }
    return out;
}

MomentScan moment_condition_scan(const std::function<double(double, double)>& phi, const GridSpec& spec,
                                 const std::vector<double>& times, double r, double b_coef)
{
    MomentScan s;
    s.times = times;
    const GridSpec big = GridSpec::make(2 * spec.nx, spec.ny, 2 * spec.lx, spec.ly);
    auto curves = [&](const GridSpec& g, std::vector<double>& raw, std::vector<double>& proj) {
        const Field2D f = sample(phi, g);
        const Spectrum2D F = forward_transform(f);
        const Spectrum2D Fp = forward_transform(project_zero_mean_x(f));
        for (double t : times) {
            raw.push_back(x_weighted_l2(inverse_transform(evolve_linear(F, t, b_coef)), r));
            proj.push_back(x_weighted_l2(inverse_transform(evolve_linear(Fp, t, b_coef)), r));
        }
        return F;
    };
    const Spectrum2D F = curves(spec, s.raw_base, s.projected_base);
    curves(big, s.raw_doubled, s.projected_doubled);
    const CArray2 ch = continuum_spectrum(F);
    for (int l = 0; l < spec.ny; ++l) {
        s.eta.push_back(spec.eta(l));
        s.phi_hat0_abs.push_back(std::abs(ch(0, l)));
    }
    auto ratio = [](double a, double b) { return b == 0.0 ? (a == 0.0 ? 1.0 : INFINITY) : a / b; };
    for (std::size_t i = 0; i < times.size(); ++i) {
        s.raw_ratio.push_back(ratio(s.raw_doubled[i], s.raw_base[i]));
        s.projected_ratio.push_back(ratio(s.projected_doubled[i], s.projected_base[i]));
    }
    return s;
}

}  // namespace rzk

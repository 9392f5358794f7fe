#include "rzk/oracles.hpp"

#include <algorithm>
#include <array>
#include <numbers>

#include <Eigen/QR>

#include "rzk/propagator.hpp"

namespace rzk {

Profile1D::Profile1D(RArray1 x, CArray1 v, std::function<cplx(double)> cf)
    : xs(std::move(x)), vals(std::move(v)), closed_form(std::move(cf))
{
    validate();
}

void Profile1D::validate() const
{
    if (xs.size() != vals.size()) throw StructuralError("profile abscissae and values differ in length");
    if (xs.size() < 2) throw InputError("profile needs at least two points");
    for (Eigen::Index i = 1; i < xs.size(); ++i)
        if (!(xs(i) > xs(i - 1))) throw InputError("profile abscissae must be strictly increasing");
    if (!vals.allFinite()) throw InputError("profile values must be finite");
}

double Profile1D::spacing() const
{
    const double h = (xs(xs.size() - 1) - xs(0)) / double(xs.size() - 1);
    for (Eigen::Index i = 1; i < xs.size(); ++i)
        if (std::abs(xs(i) - xs(i - 1) - h) > 1e-9 * h) throw InputError("profile must be uniformly sampled");
    return h;
}

Profile1D make_profile(const std::function<cplx(double)>& fn, int n, double l)
{
    if (n < 2 || !(l > 0)) throw ConfigError("profile needs n >= 2 and l > 0");
    RArray1 x(n);
    CArray1 v(n);
    const double h = 2.0 * l / n;
    for (int i = 0; i < n; ++i) {
        x(i) = -l + i * h;
        v(i) = fn(x(i));
    }
    return Profile1D(std::move(x), std::move(v), fn);
}

Profile1D make_profile_closed(const std::function<cplx(double)>& fn, int n, double a, double b)
{
    if (n < 1 || !(b > a)) throw ConfigError("closed profile needs n >= 1 and b > a");
    RArray1 x(n + 1);
    CArray1 v(n + 1);
    const double h = (b - a) / n;
    for (int i = 0; i <= n; ++i) {
        x(i) = i == n ? b : a + i * h;
        v(i) = fn(x(i));
    }
    return Profile1D(std::move(x), std::move(v), fn);
}

namespace {

// Index of the node equal to x (within round-off), or -1.
Eigen::Index node_of(const RArray1& xs, double x)
{
    const auto* first = xs.data();
    const auto* last = xs.data() + xs.size();
    const auto* it = std::lower_bound(first, last, x);
    const double tol = 1e-9 * (xs(xs.size() - 1) - xs(0)) / double(xs.size());
    Eigen::Index best = -1;
    if (it != last && std::abs(*it - x) <= tol) best = it - first;
    if (it != first && std::abs(*(it - 1) - x) <= tol) best = (it - 1) - first;
    return best;
}

cplx interp(const Profile1D& f, double x)
{
    if (f.closed_form) return f.closed_form(x);
    const auto* first = f.xs.data();
    const auto* last = f.xs.data() + f.xs.size();
    const Eigen::Index i = std::upper_bound(first, last, x) - first;
    const double s = (x - f.xs(i - 1)) / (f.xs(i) - f.xs(i - 1));
    return (1.0 - s) * f.vals(i - 1) + s * f.vals(i);
}

// Copy of f with x present as a node; returns its index.
Eigen::Index with_node(const Profile1D& f, double x, RArray1& X, CArray1& V)
{
    const Eigen::Index j = node_of(f.xs, x);
    if (j >= 0) {
        X = f.xs;
        V = f.vals;
        return j;
    }
    const Eigen::Index n = f.xs.size();
    const Eigen::Index i = std::upper_bound(f.xs.data(), f.xs.data() + n, x) - f.xs.data();
    X.resize(n + 1);
    V.resize(n + 1);
    X.head(i) = f.xs.head(i);
    V.head(i) = f.vals.head(i);
    X(i) = x;
    V(i) = interp(f, x);
    X.tail(n - i) = f.xs.tail(n - i);
    V.tail(n - i) = f.vals.tail(n - i);
    return i;
}

void require_inside(const Profile1D& f, double x)
{
    if (!(x > f.xs(0) && x < f.xs(f.xs.size() - 1))) throw InputError("evaluation point outside the sampled range");
}

}  // namespace

cplx hilbert_pv_quadrature(const Profile1D& f, double x)
{
    f.validate();
    require_inside(f, x);
    RArray1 X;
    CArray1 V;
    const Eigen::Index j0 = with_node(f, x, X, V);
    const Eigen::Index n = X.size();
    const cplx fx = V(j0);
    const cplx dfx = (V(j0 + 1) - V(j0 - 1)) / (X(j0 + 1) - X(j0 - 1));
    // Subtract f(x) so the integrand is regular; the subtracted part integrates in closed form.
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double w = 0.5 * ((j + 1 < n ? X(j + 1) : X(j)) - (j > 0 ? X(j - 1) : X(j)));
        const cplx g = j == j0 ? -dfx : (V(j) - fx) / (x - X(j));
        acc += w * g;
    }
    acc += fx * std::log((x - X(0)) / (X(n - 1) - x));
    return acc / std::numbers::pi;
}

double stein_derivative(const Profile1D& f, double b, double x)
{
    if (!(b > 0 && b < 1)) throw ConfigError("Stein order must lie in (0,1)");
    f.validate();
    require_inside(f, x);
    RArray1 X;
    CArray1 V;
    const Eigen::Index j0 = with_node(f, x, X, V);
    const Eigen::Index n = X.size();
    const cplx fx = V(j0);
    const double hl = X(j0) - X(j0 - 1), hr = X(j0 + 1) - X(j0);
    const cplx dfx = (V(j0 + 1) - V(j0 - 1)) / (hl + hr);
    const double e = 1.0 + 2.0 * b;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        if (j == j0) continue;
        const double w = 0.5 * ((j + 1 < n ? X(j + 1) : X(j)) - (j > 0 ? X(j - 1) : X(j)));
        acc += w * std::norm(fx - V(j)) / std::pow(std::abs(x - X(j)), e);
    }
    acc += std::norm(dfx) * (std::pow(0.5 * hl, 2.0 - 2.0 * b) + std::pow(0.5 * hr, 2.0 - 2.0 * b)) / (2.0 - 2.0 * b);
    acc += std::norm(fx - V(0)) * std::pow(x - X(0), -2.0 * b) / (2.0 * b);
    acc += std::norm(fx - V(n - 1)) * std::pow(X(n - 1) - x, -2.0 * b) / (2.0 * b);
    return std::sqrt(acc);
}

double stein_plane_wave(double c, double b)
{
    return std::pow(std::abs(c), b) *
           std::sqrt(2.0 * std::numbers::pi / (std::tgamma(1.0 + 2.0 * b) * std::sin(std::numbers::pi * b)));
}

double stein_group_sup(double b, double t, double eta, bool sign_variant)
{
    const double theta = t * eta * eta;
    auto F = [theta, sign_variant](double xi) {
        const cplx v = std::exp(cplx(0.0, theta * xi / (1.0 + std::abs(xi))));
        return sign_variant ? sgn(xi) * (v - 1.0) : v;
    };
    const Profile1D prof = make_profile_closed(F, 10000, -50.0, 50.0);
    double sup = 0.0;
    for (int i = 0; i <= 80; ++i) sup = std::max(sup, stein_derivative(prof, b, -2.0 + 0.05 * i));
    return sup;
}

namespace {

SteinLaw finish_law(SteinLaw law, bool fit)
{
    if (fit) law.fitted_exponent = loglog_slope(law.params, law.measured);
    double lo = INFINITY, hi = 0.0;
    for (double c : law.constants) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
    }
    law.spread = lo > 0 ? hi / lo - 1.0 : INFINITY;
    return law;
}

}  // namespace

SteinSuiteReport stein_bound_suite(double b)
{
    if (!(b > 0 && b < 1)) throw ConfigError("Stein order must lie in (0,1)");
    SteinSuiteReport rep;
    auto group_law = [b](const char* name, bool in_t, bool sign_variant) {
        SteinLaw law;
        law.name = name;
        for (int k = 0; k < 4; ++k) {
            const double t = in_t ? std::pow(2.0, k) : 1.0;
            const double eta = in_t ? 2.0 : 2.0 * std::pow(2.0, 0.5 * k);
            const double m = stein_group_sup(b, t, eta, sign_variant);
            law.params.push_back(in_t ? t : eta);
            law.measured.push_back(m);
            law.constants.push_back(m / (std::pow(t, b) * std::pow(eta, 2.0 * b)));
        }
        return finish_law(law, true);
    };
    rep.laws.push_back(group_law("group_t", true, false));
    rep.laws.push_back(group_law("group_eta", false, false));
    rep.laws.push_back(group_law("sign_group_t", true, true));
    rep.laws.push_back(group_law("sign_group_eta", false, true));

    {
        SteinLaw law;
        law.name = "algebraic_decay";
        const Profile1D prof =
            make_profile_closed([](double x) { return cplx(std::pow(1.0 + std::abs(x), -2.0)); }, 80000, -400.0, 400.0);
        for (double x : {0.0, 1.0, 10.0, 100.0}) {
            const double m = stein_derivative(prof, b, x);
            law.params.push_back(x);
            law.measured.push_back(m);
            law.constants.push_back(m * std::sqrt(1.0 + x));
        }
        rep.laws.push_back(finish_law(law, false));
    }
    {
        SteinLaw law;
        law.name = "eta_group";
        for (double xi : {0.0, 0.5, 1.0, 2.0}) {
            const double c = xi / (1.0 + xi);
            const Profile1D prof =
                make_profile_closed([c](double eta) { return std::exp(cplx(0.0, c * eta * eta)); }, 12000, -30.0, 30.0);
            const double m = stein_derivative(prof, b, 1.0);
            law.params.push_back(xi);
            law.measured.push_back(m);
            const double rhs = std::pow(c, 0.5 * b) + std::pow(c, b);
            law.constants.push_back(rhs > 0 ? m / rhs : 0.0);
        }
        rep.laws.push_back(finish_law(law, false));
    }

    rep.passes = true;
    for (const auto& law : rep.laws) {
        const bool scaling = law.name.find("group_") == 0 || law.name.find("sign_group_") == 0;
        bool finite = true;
        for (double c : law.constants) finite = finite && std::isfinite(c);
        if (!finite || (scaling && !(law.spread < 0.5))) rep.passes = false;
    }
    return rep;
}

namespace {

constexpr int kGauss = 10;

const std::array<std::pair<double, double>, kGauss>& gauss_legendre()
{
    static const auto nodes = [] {
        std::array<std::pair<double, double>, kGauss> r{};
        for (int i = 0; i < kGauss; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (kGauss + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= kGauss; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = kGauss * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            r[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
        }
        return r;
    }();
    return nodes;
}

// Integrates fn over a piece of length len starting at the anchor and heading
// in direction dir, on dyadic shells that refine toward the anchor. A
// non-integrable singularity at the anchor shows up as innermost shells that
// do not die out; that case returns infinity.
template <class Fn>
double shell_integral(Fn&& fn, double anchor, double len, double dir)
{
    constexpr int kShells = 64;
    auto gl = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi), r = 0.5 * (hi - lo);
        double s = 0.0;
        for (const auto& [x, w] : gauss_legendre()) s += w * fn(anchor + dir * (c + r * x));
        return r * s;
    };
    const double inner = gl(0.0, std::ldexp(len, -kShells)) + gl(std::ldexp(len, -kShells), std::ldexp(len, -kShells + 1));
    double acc = inner;
    for (int i = kShells - 1; i > 0; --i) acc += gl(std::ldexp(len, -i), std::ldexp(len, -i + 1));
    if (std::abs(inner) > 1e-6 * std::abs(acc)) return INFINITY;
    return acc;
}

template <class Fn>
double interval_integral(Fn&& fn, double a, double b)
{
    if (a < 0.0 && b > 0.0) return shell_integral(fn, 0.0, -a, -1.0) + shell_integral(fn, 0.0, b, 1.0);
    if (std::abs(a) <= std::abs(b)) return shell_integral(fn, a, b - a, 1.0);
    return shell_integral(fn, b, b - a, -1.0);
}

}  // namespace

std::vector<Interval> dyadic_interval_family(int levels)
{
    std::vector<Interval> fam;
    for (int k = 0; k <= levels; ++k) {
        const double d = std::ldexp(1.0, -k);
        fam.push_back({d, d + 1.0});
        for (double s : {std::ldexp(1.0, -k), std::ldexp(1.0, k)}) {
            fam.push_back({0.0, s});
            fam.push_back({-s, s});
            fam.push_back({s, 2.0 * s});
        }
    }
    return fam;
}

double ap_product(const std::function<double(double)>& w, double p, const Interval& I)
{
    if (!(p > 1)) throw ConfigError("A_p needs p > 1");
    const auto [a, b] = I;
    if (!(b > a)) throw InputError("A_p interval must have positive length");
    const double len = b - a;
    const double q = -1.0 / (p - 1.0);
    const double m1 = interval_integral([&](double x) { return w(x); }, a, b) / len;
    const double m2 = interval_integral([&](double x) { return std::pow(w(x), q); }, a, b) / len;
    return m1 * std::pow(m2, p - 1.0);
}

ApReport ap_constant(const std::function<double(double)>& w, double p, std::optional<std::pair<double, double>> alpha_r,
                     const std::vector<Interval>& family, const std::vector<Interval>& refined)
{
    if (!(p > 1)) throw ConfigError("A_p needs p > 1");
    ApReport rep;
    rep.p = p;
    auto sup_over = [&](const std::vector<Interval>& fam) {
        double s = 0.0;
        for (const auto& I : fam) {
            const double v = ap_product(w, p, I);
            if (!std::isfinite(v)) return double(INFINITY);
            s = std::max(s, v);
        }
        return s;
    };
    rep.sup_constant = sup_over(family);
    rep.intervals_tested = int(family.size() + refined.size());
    const double fine = refined.empty() ? rep.sup_constant : sup_over(refined);
    rep.passes = std::isfinite(rep.sup_constant) && std::isfinite(fine) &&
                 std::abs(fine - rep.sup_constant) <= 0.05 * rep.sup_constant;
    rep.sup_constant = std::max(rep.sup_constant, fine);
    if (alpha_r) {
        const double ra = alpha_r->first * alpha_r->second;
        rep.theory_passes = ra > -1.0 && ra < p - 1.0;
    }
    return rep;
}

ApReport ap_constant(const std::function<double(double)>& w, double p, std::optional<std::pair<double, double>> alpha_r,
                     int levels)
{
    return ap_constant(w, p, alpha_r, dyadic_interval_family(levels), dyadic_interval_family(levels + 8));
}

double ap_boundary(double alpha, double p, double r_lo, double r_hi, int levels)
{
    auto passes = [&](double r) {
        return ap_constant([alpha, r](double x) { return std::pow(1.0 + std::pow(std::abs(x), alpha), r); }, p,
                           std::make_pair(alpha, r), levels)
            .passes;
    };
    if (!passes(r_lo) || passes(r_hi)) throw InputError("A_p bisection bracket does not straddle the boundary");
    for (int i = 0; i < 14; ++i) {
        const double mid = 0.5 * (r_lo + r_hi);
        (passes(mid) ? r_lo : r_hi) = mid;
    }
    return alpha * 0.5 * (r_lo + r_hi);
}

CArray1 apply_symbol_1d(const Profile1D& f, const std::function<cplx(double)>& sym)
{
    const double h = f.spacing();
    const int n = int(f.size());
    CArray1 F = forward_transform_1d(f.vals);
    const RArray1 k = wavenumbers_1d(n, 0.5 * n * h);
    for (int i = 0; i < n; ++i) F(i) *= sym(k(i));
    return inverse_transform_1d(F);
}

CArray1 frac_deriv_1d(const Profile1D& f, double b)
{
    return apply_symbol_1d(f, [b](double k) { return cplx(std::pow(std::abs(k), b)); });
}

CArray1 hilbert_1d(const Profile1D& f)
{
    return apply_symbol_1d(f, [](double k) { return cplx(0.0, -sgn(k)); });
}

double l2_norm_1d(const Profile1D& f, const CArray1& v)
{
    return std::sqrt(v.abs2().sum() * f.spacing());
}

std::vector<double> hilbert_weighted_ratios(const std::function<double(double)>& w, double p,
                                            const std::vector<Profile1D>& family)
{
    if (!(p > 1)) throw ConfigError("weighted bound needs p > 1");
    std::vector<double> out;
    for (const auto& f : family) {
        const CArray1 Hf = hilbert_1d(f);
        double num = 0.0, den = 0.0;
        for (Eigen::Index i = 0; i < f.size(); ++i) {
            const double wi = w(f.xs(i));
            num += std::pow(std::abs(Hf(i)), p) * wi;
            den += std::pow(std::abs(f.vals(i)), p) * wi;
        }
        if (den == 0.0) continue;
        out.push_back(std::pow(num / den, 1.0 / p));
    }
    return out;
}

double hilbert_weighted_bound(const std::function<double(double)>& w, double p, const std::vector<Profile1D>& family)
{
    const auto r = hilbert_weighted_ratios(w, p, family);
    return r.empty() ? 0.0 : *std::max_element(r.begin(), r.end());
}

namespace {

Profile1D with_values(const Profile1D& f, CArray1 v) { return Profile1D(f.xs, std::move(v)); }

CArray1 leibniz_residual(const Profile1D& f, const Profile1D& g, double b)
{
    if (f.size() != g.size()) throw StructuralError("profiles differ in length");
    const CArray1 fg = f.vals * g.vals;
    return frac_deriv_1d(with_values(f, fg), b) - f.vals * frac_deriv_1d(g, b) - g.vals * frac_deriv_1d(f, b);
}

}  // namespace

double leibniz_defect(const Profile1D& f, const Profile1D& g, double b)
{
    if (!(b > 0 && b < 1)) throw ConfigError("Leibniz order must lie in (0,1)");
    const double num = l2_norm_1d(f, leibniz_residual(f, g, b));
    const double den = f.vals.abs().maxCoeff() * l2_norm_1d(g, frac_deriv_1d(g, b));
    if (den == 0.0) return 0.0;
    return num / den;
}

double kato_ponce_ratio(const Profile1D& f, const Profile1D& g, double b)
{
    if (!(b > 0 && b < 1)) throw ConfigError("Leibniz order must lie in (0,1)");
    const double num = l2_norm_1d(f, leibniz_residual(f, g, b));
    const double den = l2_norm_1d(f, frac_deriv_1d(f, b)) * g.vals.abs().maxCoeff() +
                       f.vals.abs().maxCoeff() * l2_norm_1d(g, frac_deriv_1d(g, b));
    if (den == 0.0) return 0.0;
    return num / den;
}

CommutatorSides commutator_check(const Profile1D& f, const Profile1D& rho)
{
    if (f.size() != rho.size()) throw StructuralError("profiles differ in length");
    const double h = f.spacing();
    const int n = int(f.size());
    const CArray1 lhs = frac_deriv_1d(with_values(f, rho.vals * f.vals), 0.5) - rho.vals * frac_deriv_1d(f, 0.5);
    const CArray1 R = forward_transform_1d(rho.vals);
    const RArray1 k = wavenumbers_1d(n, 0.5 * n * h);
    const double dk = 2.0 * std::numbers::pi / (n * h);
    const double scale = h / std::sqrt(2.0 * std::numbers::pi) * std::sqrt(double(n));
    const double l1 = (k.abs().sqrt() * R.abs()).sum() * scale * dk;
    return {l2_norm_1d(f, lhs), l1 * l2_norm_1d(f, f.vals)};
}

cplx jump_detector(const Profile1D& slice, const JumpFit& fit)
{
    slice.validate();
    if (fit.degree < 0 || fit.derivative < 0 || fit.derivative > fit.degree)
        throw ConfigError("jump fit needs 0 <= derivative <= degree");
    std::vector<Eigen::Index> pos, neg;
    for (Eigen::Index i = 0; i < slice.size(); ++i) {
        if (slice.xs(i) > 0) pos.push_back(i);
        else if (slice.xs(i) < 0) neg.push_back(i);
    }
    std::reverse(neg.begin(), neg.end());
    const int m = fit.stencil;
    if (m < 4 || int(pos.size()) < m || int(neg.size()) < m || m < fit.degree + 1)
        throw InputError("jump detector needs at least 4 one-sided points and more points than the fit degree");
    auto limit = [&](const std::vector<Eigen::Index>& side) {
        const double scale = std::abs(slice.xs(side[m - 1]));
        Eigen::MatrixXd A(m, fit.degree + 1);
        Eigen::MatrixXcd y(m, 1);
        for (int r = 0; r < m; ++r) {
            const double s = slice.xs(side[r]) / scale;
            double pw = 1.0;
            for (int c = 0; c <= fit.degree; ++c) {
                A(r, c) = pw;
                pw *= s;
            }
            y(r, 0) = slice.vals(side[r]);
        }
        const Eigen::MatrixXcd coef = A.cast<cplx>().colPivHouseholderQr().solve(y);
        double fact = 1.0;
        for (int k = 2; k <= fit.derivative; ++k) fact *= k;
        return coef(fit.derivative, 0) * fact / std::pow(scale, fit.derivative);
    };
    return limit(pos) - limit(neg);
}

JumpBlowup jump_blowup_demo(const std::function<cplx(double)>& f, double b, double x0, double delta, int n0,
                            int refinements, double l)
{
    if (!(b > 0 && b < 1)) throw ConfigError("fractional order must lie in (0,1)");
    JumpBlowup rep;
    for (int r = 0; r <= refinements; ++r) {
        const int n = n0 << r;
        const Profile1D prof = make_profile(f, n, l);
        const CArray1 d = frac_deriv_1d(prof, b);
        const double h = prof.spacing();
        double mass = 0.0;
        for (int i = 0; i < n; ++i) {
            const double r = std::abs(prof.xs(i) - x0);
            if (r < delta - 1e-9 * h) mass += std::norm(d(i)) * h;
            else if (r <= delta + 1e-9 * h) mass += 0.5 * std::norm(d(i)) * h;
        }
        rep.points.push_back(n);
        rep.masses.push_back(mass);
    }
    rep.strictly_increasing = true;
    for (std::size_t i = 1; i < rep.masses.size(); ++i)
        rep.strictly_increasing = rep.strictly_increasing && rep.masses[i] > rep.masses[i - 1];
    const std::size_t k = rep.masses.size();
    if (k >= 2) rep.last_relative_change = std::abs(rep.masses[k - 1] - rep.masses[k - 2]) / rep.masses[k - 1];
    return rep;
}

}  // namespace rzk

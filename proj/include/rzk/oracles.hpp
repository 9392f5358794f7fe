#ifndef RZK_ORACLES_HPP
#define RZK_ORACLES_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rzk/grid.hpp"
#include "rzk/multipliers.hpp"

namespace rzk {

struct Profile1D {
    RArray1 xs;
    CArray1 vals;
    std::function<cplx(double)> closed_form;  // optional

    Profile1D() = default;
    Profile1D(RArray1 x, CArray1 v, std::function<cplx(double)> cf = {});

    void validate() const;
    Eigen::Index size() const { return xs.size(); }
    /// Uniform spacing, or throws InputError.
    double spacing() const;
};

/// n uniform points on the periodic window [-l, l).
Profile1D make_profile(const std::function<cplx(double)>& fn, int n, double l);
/// n + 1 uniform points on the closed window [a, b].
Profile1D make_profile_closed(const std::function<cplx(double)>& fn, int n, double a, double b);

/// (1/pi) PV integral f(y)/(x-y) dy over the sampled window.
cplx hilbert_pv_quadrature(const Profile1D& f, double x);

/// (integral |f(x)-f(y)|^2 / |x-y|^{1+2b} dy)^{1/2}; ends continued as constants.
double stein_derivative(const Profile1D& f, double b, double x);
/// Closed form of the Stein derivative of exp(icx).
double stein_plane_wave(double c, double b);

struct SteinLaw {
    std::string name;
    std::vector<double> params;     // the swept parameter (t or eta or x)
    std::vector<double> measured;   // left side
    std::vector<double> constants;  // left side / right side
    double fitted_exponent = 0.0;   // log-log slope of measured against params (when meaningful)
    double spread = 0.0;            // max/min of constants - 1
};

struct SteinSuiteReport {
    std::vector<SteinLaw> laws;
    bool passes = false;
};

/// sup over x in [-2, 2] of the Stein derivative in xi of exp(i t eta^2 xi/(1+|xi|)).
double stein_group_sup(double b, double t, double eta, bool sign_variant = false);

SteinSuiteReport stein_bound_suite(double b = 0.25);

struct ApReport {
    double p = 2.0;
    int intervals_tested = 0;
    double sup_constant = 0.0;
    bool passes = false;
    std::optional<bool> theory_passes;  // for (gamma + |x|^alpha)^r weights
};

using Interval = std::pair<double, double>;

/// Dyadic family around 0 and infinity: [d, d+1], [0, s], [-s, s], [s, 2s].
std::vector<Interval> dyadic_interval_family(int levels);
/// A_p product on one interval.
double ap_product(const std::function<double(double)>& w, double p, const Interval& I);
/// passes when the sup over `family` is finite and moves by < 5% when the
/// family gains 8 further dyadic levels.
ApReport ap_constant(const std::function<double(double)>& w, double p, std::optional<std::pair<double, double>> alpha_r,
                     int levels = 40);
ApReport ap_constant(const std::function<double(double)>& w, double p, std::optional<std::pair<double, double>> alpha_r,
                     const std::vector<Interval>& family, const std::vector<Interval>& refined);
/// Bisection in r for w = (1 + |x|^alpha)^r on [r_lo, r_hi]; returns r*alpha at the pass/fail switch.
double ap_boundary(double alpha, double p, double r_lo, double r_hi, int levels = 40);

/// max over family of ||Hf||_{L^p(w)} / ||f||_{L^p(w)} with the FFT Hilbert transform.
double hilbert_weighted_bound(const std::function<double(double)>& w, double p, const std::vector<Profile1D>& family);
/// Same ratio for each member, in order.
std::vector<double> hilbert_weighted_ratios(const std::function<double(double)>& w, double p,
                                            const std::vector<Profile1D>& family);

/// Spectral 1D helpers on uniform periodic profiles.
CArray1 apply_symbol_1d(const Profile1D& f, const std::function<cplx(double)>& sym);
CArray1 frac_deriv_1d(const Profile1D& f, double b);
CArray1 hilbert_1d(const Profile1D& f);
double l2_norm_1d(const Profile1D& f, const CArray1& v);

/// ||D^b(fg) - f D^b g - g D^b f|| / (||f||_inf ||D^b g||).
double leibniz_defect(const Profile1D& f, const Profile1D& g, double b);
/// ||D^b(fg) - f D^b g - g D^b f|| / (||D^b f|| ||g||_inf + ||f||_inf ||D^b g||).
double kato_ponce_ratio(const Profile1D& f, const Profile1D& g, double b);

struct CommutatorSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// lhs = ||[D^{1/2}, rho] f||, rhs = || |xi|^{1/2} rho^ ||_{L1} ||f||.
CommutatorSides commutator_check(const Profile1D& f, const Profile1D& rho);

struct JumpFit {
    int degree = 3;
    int stencil = 8;
    int derivative = 0;
};

/// Difference of the one-sided polynomial extrapolations (of the requested
/// derivative) at 0 from xi > 0 and xi < 0.
cplx jump_detector(const Profile1D& slice, const JumpFit& fit = {});

struct JumpBlowup {
    std::vector<int> points;
    std::vector<double> masses;  // integral of |D^b f|^2 over (x0-delta, x0+delta)
    bool strictly_increasing = false;
    double last_relative_change = 0.0;
};

JumpBlowup jump_blowup_demo(const std::function<cplx(double)>& f, double b = 0.5, double x0 = 0.0,
                            double delta = 0.25, int n0 = 1024, int refinements = 4, double l = 8.0);

}  // namespace rzk

#endif  // RZK_ORACLES_HPP

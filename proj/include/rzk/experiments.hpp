#ifndef RZK_EXPERIMENTS_HPP
#define RZK_EXPERIMENTS_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rzk/grid.hpp"
#include "rzk/norms.hpp"
#include "rzk/solver.hpp"

namespace rzk {

struct Series {
    std::string label;
    std::vector<double> x;  // t or the swept parameter
    std::vector<double> values;
};

struct Verdict {
    std::string criterion;
    bool pass = false;
    double measured = 0.0;
    double threshold = 0.0;
};

struct ExperimentReport {
    std::string name;
    std::map<std::string, double> params;
    std::vector<Series> series;
    std::vector<Verdict> verdicts;

    void add_series(std::string label, std::vector<double> x, std::vector<double> values);
    /// A non-finite measurement is stored as the largest double and fails.
    void add_verdict(std::string criterion, double measured, double threshold, bool pass);
    bool all_pass() const;
};

using Profile2D = std::function<double(double, double)>;

/// ||B phi||_F / ||phi||_F for B = -d_x (1 + H d_x)^{-1}.
double b_operator_ratio(const Field2D& phi, const NormIndices& idx, double b_coef = 1.0);

/// Seeded Gaussian bumps: random widths, centres and x-modulation. Member k
/// does not depend on count, so a doubled family contains the smaller one.
std::vector<Field2D> gaussian_family(const GridSpec& g, int count, std::uint64_t seed);

/// Max of b_operator_ratio over the family; verdict compares the full family
/// with its first half. Throws ConfigError unless r1 < 5/2.
ExperimentReport run_b_boundedness(const std::vector<Field2D>& family, const NormIndices& idx);

struct BoxScan {
    std::vector<double> lx;
    std::vector<double> max_ratio;
    bool stable = false;   // max/min <= 1.25
    bool growing = false;  // strictly increasing and last/first > 1.25
};

/// Family maxima on boxes base_lx * 2^k, k = 0..doublings, at dx = 0.25,
/// ny = 64, ly = 12.
BoxScan b_box_scan(const NormIndices& idx, int count, std::uint64_t seed, double base_lx = 16.0, int doublings = 2);

/// Family doubling and box doubling at idx.r1, plus the r1 = 2.6 contrast run.
ExperimentReport run_b_bounded_suite(const NormIndices& idx, int count = 50, std::uint64_t seed = 0);

/// Growth degrees of ||E(t) phi||_F over t in [1, 8] for the listed (r1, r2) pairs.
ExperimentReport run_linear_growth_suite(const GridSpec& g = GridSpec{});

/// x^3-weighted norm at doubled lx for Gaussian, projected and x-odd data.
ExperimentReport run_decay_breakdown(const GridSpec& g = GridSpec::make(128, 256, 16.0, 32.0));

/// Measured xi = 0 jump of (x^2 u(t2))^ against the frozen-mode prediction.
/// The default data is exp(-x^2 - (y/3)^2).
ExperimentReport run_uc_jump(const SolverParams& p, double t2, const Profile2D& phi = {});

/// Empirical constants of the harmonic-analysis inequalities on a seeded
/// family of `count` members and on its first half.
ExperimentReport run_inequality_suite(int count = 100, std::uint64_t seed = 0);

/// Fitted Stein-derivative exponents of the linear group in t and eta.
ExperimentReport run_stein_scaling(const std::vector<double>& bs = {0.25, 0.5});

/// Local |D^{1/2} f|^2 mass of sign(x) e^{-x^2} under dyadic refinement, with a smooth control.
ExperimentReport run_jump_nonmembership();

/// Self-convergence order, Picard contraction on estimate_T horizons and the frozen mode.
ExperimentReport run_solver_suite(const GridSpec& g = GridSpec::make(64, 64, 10.0, 10.0));

/// One nonlinear run from a Gaussian; with a = 0 also checks against evolve_linear.
ExperimentReport run_simulate(const SolverParams& p, const NormIndices& idx, const Profile2D& phi = {});

}  // namespace rzk

#endif  // RZK_EXPERIMENTS_HPP

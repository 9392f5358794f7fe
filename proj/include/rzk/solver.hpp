#ifndef RZK_SOLVER_HPP
#define RZK_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rzk/grid.hpp"
#include "rzk/norms.hpp"

namespace rzk {

struct SolverParams {
    double a_coef = 1.0;
    double b_coef = 1.0;
    int n_power = 2;
    GridSpec grid;
    double dt = 0.01;
    double t_end = 1.0;
    double picard_tol = 1e-10;
    int picard_max = 50;
    bool dealias = true;
    bool nonlinear_includes_dyy = false;
    int record_every = 10;  // steps between stored frames; the final state is always stored

    void validate() const;
    bool operator==(const SolverParams&) const = default;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<Field2D> states;
    std::vector<double> norms;  // filled only when requested
    double frozen_mode_drift = 0.0;  // max over frames of |U(t,0,eta) - U(0,0,eta)|
};

/// Precomputed symbols for one parameter set. Works on unitary spectra.
class Dynamics {
public:
    explicit Dynamics(const SolverParams& p);

    const SolverParams& params() const { return p_; }
    /// Spectrum of B(u^n) for the state given by its spectrum.
    CArray2 nonlinear(const CArray2& U, double t = 0.0) const;
    /// E(tau) applied to a spectrum.
    CArray2 propagate(const CArray2& U, double tau) const;
    CArray2 step(const CArray2& U, double dt, double t = 0.0) const;

private:
    SolverParams p_;
    RArray2 lin_;  // real phase rate: symbol = i * lin_
    CArray2 nl_;
    RArray2 mask_;
};

Field2D nonlinear_term(const Field2D& u, const SolverParams& p);
Field2D etd_step(const Field2D& u, double dt, const SolverParams& p);

using FrameObserver = std::function<void(double t, const Spectrum2D& U)>;

/// Marches etd_step to t_end. The observer, if given, sees every step
/// (including t = 0). When idx is given the F-norm of each stored frame is kept.
Trajectory solve(const Field2D& phi, const SolverParams& p, const FrameObserver& observer = {},
                 const NormIndices* idx = nullptr);

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> distances;  // sup_t ||u_{k+1} - u_k||_{L2}
    std::vector<double> ratios;     // distances[k+1] / distances[k]
    int iterations = 0;             // applications of the Picard map
};

PicardResult picard_solve(const Field2D& phi, double T, int m_steps, const SolverParams& p);

/// Largest T meeting T c(T) <= M/(M+|phi|)^n and n c(T) (M+|phi|)^{n-1} T < 1.
double estimate_T(double phi_norm, double M, int n_power, const std::function<double(double)>& c_growth);

/// sup_t ||u_phi - u_{phi+delta}||_F / ||delta||_F for a seeded random delta with ||delta||_F = eps.
double continuity_of_data_check(const Field2D& phi, double eps, const SolverParams& p, const NormIndices& idx,
                                std::uint64_t seed = 0);

}  // namespace rzk

#endif  // RZK_SOLVER_HPP

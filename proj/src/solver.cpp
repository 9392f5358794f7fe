#include "rzk/solver.hpp"

#include <random>

#include "rzk/multipliers.hpp"
#include "rzk/propagator.hpp"

namespace rzk {

void SolverParams::validate() const
{
    grid.validate();
    if (!(b_coef > 0)) throw ConfigError("b must be > 0");
    if (!std::isfinite(a_coef)) throw ConfigError("a must be finite");
    if (n_power < 2) throw ConfigError("n must be an integer >= 2");
    if (!(dt > 0)) throw ConfigError("dt must be > 0");
    if (!(t_end > 0)) throw ConfigError("t_end must be > 0");
    if (dt > t_end) throw ConfigError("dt must be <= t_end");
    if (!(picard_tol > 0)) throw ConfigError("picard_tol must be > 0");
    if (picard_max < 1) throw ConfigError("picard_max must be >= 1");
    if (record_every < 1) throw ConfigError("record_every must be >= 1");
}

Dynamics::Dynamics(const SolverParams& p) : p_(p)
{
    p_.validate();
    const auto& g = p_.grid;
    lin_ = symbol_on_grid(linear_symbol(p_.b_coef), g).imag();
    nl_ = symbol_on_grid(nonlinear_multiplier(p_.a_coef, p_.b_coef, p_.nonlinear_includes_dyy), g);
    mask_ = p_.dealias ? dealias_mask(g) : RArray2::Ones(g.nx, g.ny);
}

CArray2 Dynamics::propagate(const CArray2& U, double tau) const
{
    return U * (lin_ * tau).unaryExpr([](double ph) { return std::polar(1.0, ph); });
}

CArray2 Dynamics::nonlinear(const CArray2& U, double t) const
{
    if (p_.a_coef == 0.0) return CArray2::Zero(U.rows(), U.cols());
    CArray2 v = U;
    inverse_inplace(v);
    const double umax = v.abs().maxCoeff();
    v = v.pow(p_.n_power);
    if (!v.allFinite()) throw DivergenceError("nonlinear term overflowed", t, umax);
    forward_inplace(v);
    return nl_ * mask_.cast<cplx>() * v;
}

CArray2 Dynamics::step(const CArray2& U, double dt, double t) const
{
    const CArray2 N0 = nonlinear(U, t);
    const CArray2 EU = propagate(U, dt);
    const CArray2 EN0 = propagate(N0, dt);
    const CArray2 pred = EU + dt * EN0;
    const CArray2 N1 = nonlinear(pred, t + dt);
    return EU + (0.5 * dt) * (EN0 + N1);
}

Field2D nonlinear_term(const Field2D& u, const SolverParams& p)
{
    SolverParams q = p;
    q.grid = u.spec;
    const Dynamics d(q);
    return inverse_transform(Spectrum2D(u.spec, d.nonlinear(forward_transform(u).coeffs)));
}

Field2D etd_step(const Field2D& u, double dt, const SolverParams& p)
{
    if (!(dt > 0)) throw ConfigError("dt must be > 0");
    SolverParams q = p;
    q.grid = u.spec;
    const Dynamics d(q);
    CArray2 U = d.step(forward_transform(u).coeffs, dt);
    if (!U.allFinite()) throw DivergenceError("step produced non-finite values", 0.0, max_abs(u));
    return inverse_transform(Spectrum2D(u.spec, std::move(U)));
}

Trajectory solve(const Field2D& phi, const SolverParams& p, const FrameObserver& observer, const NormIndices* idx)
{
    SolverParams q = p;
    q.grid = phi.spec;
    const Dynamics d(q);
    const GridSpec& g = phi.spec;
    Trajectory tr;
    CArray2 U = forward_transform(phi).coeffs;
    const Eigen::ArrayXcd frozen = U.row(0).transpose();
    const double max0 = max_abs(phi);
    const double limit = max0 > 0 ? 1e6 * max0 : INFINITY;

    auto record = [&](double t, const CArray2& S) {
        Field2D f = inverse_transform(Spectrum2D(g, S));
        const double m = max_abs(f);
        if (!(m <= limit)) throw DivergenceError("solution left the healthy regime", t, m);
        tr.times.push_back(t);
        if (idx) tr.norms.push_back(f_space_norm(f, *idx));
        tr.states.push_back(std::move(f));
    };

    record(0.0, U);
    if (observer) observer(0.0, Spectrum2D(g, U));
    const long steps = std::lround(std::ceil(q.t_end / q.dt - 1e-9));
    double t = 0.0;
    double last_healthy = 0.0;
    for (long s = 1; s <= steps; ++s) {
        const double h = std::min(q.dt, q.t_end - t);
        CArray2 next;
        try {
            next = d.step(U, h, t);
        } catch (const DivergenceError& e) {
            throw DivergenceError(e.what(), last_healthy, e.max_abs());
        }
        if (!next.allFinite()) throw DivergenceError("solution became non-finite", last_healthy, INFINITY);
        U = std::move(next);
        t = s == steps ? q.t_end : s * q.dt;
        tr.frozen_mode_drift = std::max(tr.frozen_mode_drift, (U.row(0).transpose() - frozen).abs().maxCoeff());
        if (observer) observer(t, Spectrum2D(g, U));
        if (s % q.record_every == 0 || s == steps) {
            record(t, U);
            last_healthy = t;
        }
    }
    return tr;
}

PicardResult picard_solve(const Field2D& phi, double T, int m_steps, const SolverParams& p)
{
    if (!(T > 0)) throw ConfigError("Picard horizon must be > 0");
    if (m_steps < 8) throw ConfigError("Picard needs at least 8 quadrature intervals");
    SolverParams q = p;
    q.grid = phi.spec;
    const Dynamics d(q);
    const GridSpec& g = phi.spec;
    const double h = T / m_steps;
    const CArray2 P = forward_transform(phi).coeffs;

    std::vector<CArray2> lin(m_steps + 1), u(m_steps + 1);
    for (int j = 0; j <= m_steps; ++j) lin[j] = d.propagate(P, j * h);
    u = lin;

    PicardResult res;
    const double scale = std::sqrt(g.dx() * g.dy());
    for (int it = 0; it < q.picard_max; ++it) {
        std::vector<CArray2> N(m_steps + 1);
        for (int j = 0; j <= m_steps; ++j) N[j] = d.nonlinear(u[j], j * h);
        std::vector<CArray2> next(m_steps + 1);
        double dist = 0.0;
        for (int j = 0; j <= m_steps; ++j) {
            CArray2 acc = lin[j];
            if (j > 0) {
                CArray2 integral = 0.5 * (d.propagate(N[0], j * h) + N[j]);
                for (int i = 1; i < j; ++i) integral += d.propagate(N[i], (j - i) * h);
                acc += h * integral;
            }
            dist = std::max(dist, std::sqrt((acc - u[j]).abs2().sum()) * scale);
            next[j] = std::move(acc);
        }
        u = std::move(next);
        res.iterations = it + 1;
        if (!res.distances.empty()) {
            const double prev = res.distances.back();
            res.ratios.push_back(prev > 0 ? dist / prev : 0.0);
        }
        res.distances.push_back(dist);
        if (!std::isfinite(dist)) {
            throw NonContractionError("Picard iterates diverged", res.ratios.empty() ? INFINITY : res.ratios.back());
        }
        if (dist < q.picard_tol) {
            for (int j = 0; j <= m_steps; ++j) {
                res.trajectory.times.push_back(j * h);
                res.trajectory.states.push_back(inverse_transform(Spectrum2D(g, u[j])));
                res.trajectory.frozen_mode_drift =
                    std::max(res.trajectory.frozen_mode_drift, (u[j].row(0) - P.row(0)).abs().maxCoeff());
            }
            return res;
        }
    }
    throw NonContractionError("Picard iteration did not converge within picard_max iterations",
                              res.ratios.empty() ? 1.0 : res.ratios.back());
}

double estimate_T(double phi_norm, double M, int n_power, const std::function<double(double)>& c_growth)
{
    if (!(phi_norm > 0) || !(M > 0)) throw ConfigError("estimate_T needs positive norms");
    if (n_power < 2) throw ConfigError("n must be an integer >= 2");
    const double R = M + phi_norm;
    auto ok = [&](double T) {
        const double c = c_growth(T);
        return T * c <= M / std::pow(R, n_power) && n_power * c * std::pow(R, n_power - 1) * T < 1.0;
    };
    const double floor = 1e-8;
    if (!ok(floor)) throw ConfigError("no admissible T above 1e-8");
    double lo = floor, hi = floor;
    while (ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e12) return lo;
    }
    for (int i = 0; i < 200 && hi - lo > 1e-14 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

double continuity_of_data_check(const Field2D& phi, double eps, const SolverParams& p, const NormIndices& idx,
                                std::uint64_t seed)
{
    if (eps == 0.0) return 0.0;
    if (!(eps > 0)) throw ConfigError("perturbation size must be >= 0");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> centre(-2.0, 2.0), width(0.7, 1.5), amp(-1.0, 1.0);
    struct Bump { double cx, cy, w, a; };
    std::vector<Bump> bumps;
    for (int i = 0; i < 3; ++i) bumps.push_back({centre(rng), centre(rng), width(rng), amp(rng)});
    Field2D delta = sample([&](double x, double y) {
        double v = 0.0;
        for (const auto& b : bumps) v += b.a * std::exp(-((x - b.cx) * (x - b.cx) + (y - b.cy) * (y - b.cy)) / (b.w * b.w));
        return v;
    }, phi.spec);
    delta.values *= eps / f_space_norm(delta, idx);
    const Trajectory a = solve(phi, p);
    const Trajectory b = solve(phi + delta, p);
    const double dn = f_space_norm(delta, idx);
    double sup = 0.0;
    for (std::size_t i = 0; i < a.states.size(); ++i) sup = std::max(sup, f_space_norm(a.states[i] - b.states[i], idx) / dn);
    return sup;
}

}  // namespace rzk

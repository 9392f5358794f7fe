#include "rzk/norms.hpp"

namespace rzk {

void NormIndices::validate() const
{
    if (!(s1 >= 0)) throw ConfigError("s1 must be >= 0");
    if (!(s2 >= 0)) throw ConfigError("s2 must be >= 0");
    if (!(r1 >= 0)) throw ConfigError("r1 must be >= 0");
    if (!(r2 >= 0)) throw ConfigError("r2 must be >= 0");
}

bool NormIndices::well_posed() const
{
    if (s1 <= 0 || s2 <= 0) return false;
    return 1.0 / s1 + 1.0 / s2 < 2.0 && s2 >= std::max(2.0 * r1, r2) && r1 < 2.5;
}

double sobolev_aniso(const Spectrum2D& F, double s1, double s2)
{
    if (!(s1 >= 0) || !(s2 >= 0)) throw ConfigError("Sobolev indices must be >= 0");
    const auto& g = F.spec;
    const RArray1 wx = g.xis().abs().pow(s1);
    const RArray1 wy = g.etas().abs().pow(s2);
    double acc = 0.0;
    for (int l = 0; l < g.ny; ++l) {
        for (int k = 0; k < g.nx; ++k) {
            const double w = 1.0 + wx(k) + wy(l);
            acc += w * w * std::norm(F.coeffs(k, l));
        }
    }
    return std::sqrt(acc * g.dx() * g.dy());
}

double sobolev_aniso(const Field2D& f, double s1, double s2)
{
    return sobolev_aniso(forward_transform(f), s1, s2);
}

double weighted_l2(const Field2D& f, double r1, double r2)
{
    if (!(r1 >= 0) || !(r2 >= 0)) throw ConfigError("weight indices must be >= 0");
    const auto& g = f.spec;
    const RArray1 wx = g.xs().abs().pow(r1);
    const RArray1 wy = g.ys().abs().pow(r2);
    double acc = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double w = wx(i) + wy(j);
            acc += w * w * std::norm(f.values(i, j));
        }
    }
    return std::sqrt(acc * g.dx() * g.dy());
}

double f_space_norm(const Field2D& f, const NormIndices& idx)
{
    idx.validate();
    return std::hypot(sobolev_aniso(f, idx.s1, idx.s2), weighted_l2(f, idx.r1, idx.r2));
}

EmbeddingReport embedding_check(double s1, double s2, const std::vector<Field2D>& samples)
{
    if (!(s1 > 0) || !(s2 > 0)) throw ConfigError("embedding indices must be > 0");
    EmbeddingReport rep;
    rep.condition = 1.0 / s1 + 1.0 / s2 < 2.0;
    if (!rep.condition) return rep;
    for (const auto& f : samples) {
        const double n = sobolev_aniso(f, s1, s2);
        if (n == 0.0) throw InputError("embedding sample is zero");
        rep.constant = std::max(rep.constant, max_abs(f) / n);
    }
    return rep;
}

double algebra_ratio(const Field2D& f, const Field2D& g, const NormIndices& idx)
{
    if (!(f.spec == g.spec)) throw StructuralError("field grids differ");
    const double nf = f_space_norm(f, idx);
    const double ng = f_space_norm(g, idx);
    if (nf == 0.0 || ng == 0.0) throw InputError("algebra ratio needs nonzero factors");
    const Field2D fg(f.spec, f.values * g.values);
    return f_space_norm(fg, idx) / (nf * ng);
}

InterpolationSides interpolation_check(const Field2D& f, double a, double b, double theta, Axis u_axis)
{
    if (!(theta > 0 && theta < 1)) throw ConfigError("theta must lie in (0,1)");
    if (!(a > 0) || !(b >= 0)) throw ConfigError("interpolation exponents must be positive");
    if (u_axis == Axis::isotropic) throw ConfigError("interpolation axis must be x or y");
    const auto& g = f.spec;
    auto weight = [&](double power) {
        CArray2 w(g.nx, g.ny);
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const double v = u_axis == Axis::x ? g.y(j) : g.x(i);
                w(i, j) = std::pow(1.0 + v * v, 0.5 * power);
            }
        return w;
    };
    const Field2D inner(g, weight((1.0 - theta) * b) * f.values);
    const double lhs = l2_norm(bessel_potential(inner, theta * a, u_axis));
    const double wb = l2_norm(Field2D(g, weight(b) * f.values));
    const double ja = l2_norm(bessel_potential(f, a, u_axis));
    return {lhs, std::pow(wb, 1.0 - theta) * std::pow(ja, theta)};
}

}  // namespace rzk

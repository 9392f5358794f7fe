#include "rzk/multipliers.hpp"

#include <sstream>

namespace rzk {

namespace {

void require_positive(double v, const char* name)
{
    if (!(v > 0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be > 0");
}

}  // namespace

CArray2 symbol_on_grid(const Symbol& m, const GridSpec& spec)
{
    CArray2 out(spec.nx, spec.ny);
    for (int l = 0; l < spec.ny; ++l) {
        const double eta = spec.eta(l);
        for (int k = 0; k < spec.nx; ++k) {
            const double xi = spec.xi(k);
            const cplx v = m(xi, eta);
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                std::ostringstream os;
                os << "symbol " << m.name << " is not finite at (xi=" << xi << ", eta=" << eta << ")";
                throw ConfigError(os.str());
            }
            out(k, l) = v;
        }
    }
    if (m.hermitian) hermitian_nyquist(out);
    return out;
}

Spectrum2D apply_multiplier(const Spectrum2D& F, const Symbol& m)
{
    return Spectrum2D(F.spec, symbol_on_grid(m, F.spec) * F.coeffs);
}

Field2D apply_multiplier(const Field2D& f, const Symbol& m)
{
    return inverse_transform(apply_multiplier(forward_transform(f), m));
}

Symbol identity_symbol()
{
    return {"identity", [](double, double) { return cplx(1.0); }, {}};
}

Symbol dx_symbol()
{
    return {"dx", [](double xi, double) { return cplx(0.0, xi); }, {}};
}

Symbol dy_symbol()
{
    return {"dy", [](double, double eta) { return cplx(0.0, eta); }, {}};
}

Symbol hilbert_symbol()
{
    return {"hilbert_x", [](double xi, double) { return cplx(0.0, -sgn(xi)); }, {}};
}

Symbol resolvent_symbol(double b_coef)
{
    require_positive(b_coef, "b");
    return {"resolvent", [b_coef](double xi, double) { return cplx(1.0 / (1.0 + b_coef * std::abs(xi))); },
            {{"b", b_coef}}};
}

Symbol frac_deriv_symbol(double b, Axis axis)
{
    require_positive(b, "fractional order");
    if (axis == Axis::isotropic) {
        return {"frac_deriv", [b](double xi, double eta) { return cplx(std::pow(std::hypot(xi, eta), b)); },
                {{"b", b}}};
    }
    const bool ax = axis == Axis::x;
    return {"frac_deriv", [b, ax](double xi, double eta) { return cplx(std::pow(std::abs(ax ? xi : eta), b)); },
            {{"b", b}}};
}

Symbol bessel_symbol(double s, Axis axis)
{
    return {"bessel", [s, axis](double xi, double eta) {
                double q = 1.0;
                if (axis != Axis::y) q += xi * xi;
                if (axis != Axis::x) q += eta * eta;
                return cplx(std::pow(q, 0.5 * s));
            },
            {{"s", s}}};
}

Symbol nonlinear_multiplier(double a_coef, double b_coef, bool include_dyy)
{
    require_positive(b_coef, "b");
    return {"nonlinear", [a_coef, b_coef, include_dyy](double xi, double eta) {
                cplx v(0.0, -a_coef * xi / (1.0 + b_coef * std::abs(xi)));
                if (include_dyy) v *= -eta * eta;
                return v;
            },
            {{"a", a_coef}, {"b", b_coef}, {"dyy", include_dyy ? 1.0 : 0.0}}};
}

Symbol linear_symbol(double b_coef)
{
    require_positive(b_coef, "b");
    return {"linear", [b_coef](double xi, double eta) {
                return cplx(0.0, xi * eta * eta / (1.0 + b_coef * std::abs(xi)));
            },
            {{"b", b_coef}}};
}

Field2D hilbert_x(const Field2D& f) { return apply_multiplier(f, hilbert_symbol()); }

Field2D frac_deriv(const Field2D& f, double b, Axis axis) { return apply_multiplier(f, frac_deriv_symbol(b, axis)); }

Field2D bessel_potential(const Field2D& f, double s, Axis axis) { return apply_multiplier(f, bessel_symbol(s, axis)); }

}  // namespace rzk

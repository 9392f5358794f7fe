#ifndef RZK_MULTIPLIERS_HPP
#define RZK_MULTIPLIERS_HPP

#include <functional>
#include <map>
#include <string>

#include "rzk/grid.hpp"

namespace rzk {

enum class Axis { x, y, isotropic };

/// A named Fourier symbol m(xi, eta).
struct Symbol {
    std::string name;
    std::function<cplx(double, double)> eval;
    std::map<std::string, double> params;
    bool hermitian = true;  // m(-xi,-eta) = conj(m(xi,eta))

    cplx operator()(double xi, double eta) const { return eval(xi, eta); }
};

/// m sampled on the FFT-ordered wavenumber lattice, Hermitian-projected on the
/// Nyquist lines when m is flagged hermitian. Throws ConfigError on a
/// non-finite value.
CArray2 symbol_on_grid(const Symbol& m, const GridSpec& spec);

Field2D apply_multiplier(const Field2D& f, const Symbol& m);
Spectrum2D apply_multiplier(const Spectrum2D& F, const Symbol& m);

Symbol identity_symbol();
Symbol dx_symbol();  // i xi
Symbol dy_symbol();  // i eta
Symbol hilbert_symbol();  // -i sign(xi), sign(0) = 0
Symbol resolvent_symbol(double b_coef);  // 1/(1 + b|xi|)
Symbol frac_deriv_symbol(double b, Axis axis);
Symbol bessel_symbol(double s, Axis axis);
/// -a i xi / (1 + b|xi|), times -eta^2 when include_dyy is set.
Symbol nonlinear_multiplier(double a_coef, double b_coef, bool include_dyy = false);
/// i xi eta^2 / (1 + b|xi|)
Symbol linear_symbol(double b_coef);

Field2D hilbert_x(const Field2D& f);
Field2D frac_deriv(const Field2D& f, double b, Axis axis = Axis::x);
Field2D bessel_potential(const Field2D& f, double s, Axis axis);

inline double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

}  // namespace rzk

#endif  // RZK_MULTIPLIERS_HPP

#ifndef RZK_GRID_HPP
#define RZK_GRID_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include <Eigen/Dense>

#include "rzk/errors.hpp"

namespace rzk {

using cplx = std::complex<double>;
using CArray2 = Eigen::Array<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using RArray2 = Eigen::ArrayXXd;
using CArray1 = Eigen::ArrayXcd;
using RArray1 = Eigen::ArrayXd;

/// Periodic box [-lx, lx) x [-ly, ly) sampled on an nx x ny lattice.
///
/// Storage is (i, j) = (x index, y index). Spectral arrays use the usual FFT
/// ordering: row k holds the signed wavenumber index k for k < nx/2 and
/// k - nx otherwise, so xi(k) = pi * signed(k) / lx.
struct GridSpec {
    int nx = 512;
    int ny = 512;
    double lx = 40.0 * std::numbers::pi;
    double ly = 40.0 * std::numbers::pi;

    static GridSpec make(int nx, int ny, double lx, double ly);
    void validate() const;

    double dx() const { return 2.0 * lx / nx; }
    double dy() const { return 2.0 * ly / ny; }
    double dxi() const { return std::numbers::pi / lx; }
    double deta() const { return std::numbers::pi / ly; }
    double x(int i) const { return -lx + i * dx(); }
    double y(int j) const { return -ly + j * dy(); }
    double xi(int k) const { return dxi() * signed_index(k, nx); }
    double eta(int l) const { return deta() * signed_index(l, ny); }
    Eigen::Index size() const { return Eigen::Index(nx) * ny; }

    RArray1 xs() const;
    RArray1 ys() const;
    RArray1 xis() const;
    RArray1 etas() const;

    static int signed_index(int k, int n) { return k < n / 2 ? k : k - n; }
    static int storage_index(int signed_k, int n) { return signed_k >= 0 ? signed_k : signed_k + n; }

    bool operator==(const GridSpec&) const = default;
};

/// Physical samples u(x_i, y_j).
struct Field2D {
    GridSpec spec;
    CArray2 values;

    Field2D() = default;
    explicit Field2D(const GridSpec& s);
    Field2D(const GridSpec& s, CArray2 v);
};

/// Unitary DFT coefficients of a Field2D, FFT-ordered.
struct Spectrum2D {
    GridSpec spec;
    CArray2 coeffs;

    Spectrum2D() = default;
    explicit Spectrum2D(const GridSpec& s);
    Spectrum2D(const GridSpec& s, CArray2 c);
};

Spectrum2D forward_transform(const Field2D& f);
Field2D inverse_transform(const Spectrum2D& F);

// Raw array versions used on hot paths (in place, unitary).
void forward_inplace(CArray2& a);
void inverse_inplace(CArray2& a);

// One-dimensional unitary transforms for profile oracles.
CArray1 forward_transform_1d(const CArray1& a);
CArray1 inverse_transform_1d(const CArray1& a);
/// Angular wavenumbers of an n-point periodic grid of half-width l, FFT-ordered.
RArray1 wavenumbers_1d(int n, double l);

/// Caps the worker threads FFTW may use; 0 keeps the current setting.
void set_fft_threads(int threads);

/// Evaluates fn at every grid point. Non-finite samples raise InputError.
template <class Fn>
Field2D sample(Fn&& fn, const GridSpec& spec)
{
    spec.validate();
    Field2D out(spec);
    for (int j = 0; j < spec.ny; ++j) {
        const double y = spec.y(j);
        for (int i = 0; i < spec.nx; ++i) {
            const double x = spec.x(i);
            const cplx v(fn(x, y));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw InputError("non-finite sample at grid point (x=" + std::to_string(x) +
                                 ", y=" + std::to_string(y) + ")");
            }
            out.values(i, j) = v;
        }
    }
    return out;
}

double l2_norm(const Field2D& f);
double l2_norm(const Spectrum2D& F);
double max_abs(const Field2D& f);
/// max |Im u| / max |u| (0 for the zero field).
double imag_residue(const Field2D& f);

/// Approximates the continuum transform (1/2pi) * integral f e^{-i(x xi + y eta)}
/// at the grid wavenumbers. Accounts for the unitary scaling and for the grid
/// origin sitting at (-lx, -ly).
CArray2 continuum_spectrum(const Spectrum2D& F);
/// Inverse of continuum_spectrum.
Spectrum2D from_continuum(const GridSpec& spec, const CArray2& fhat);

/// Replaces the Nyquist row and column of a sampled symbol by its Hermitian
/// part so that symbols odd in xi or eta map real data to real data.
void hermitian_nyquist(CArray2& m);

/// 1 where |k| < nx/3 and |l| < ny/3, 0 elsewhere.
RArray2 dealias_mask(const GridSpec& spec);

inline Field2D operator+(const Field2D& a, const Field2D& b)
{
    if (!(a.spec == b.spec)) throw StructuralError("field grids differ");
    return Field2D(a.spec, a.values + b.values);
}

inline Field2D operator-(const Field2D& a, const Field2D& b)
{
    if (!(a.spec == b.spec)) throw StructuralError("field grids differ");
    return Field2D(a.spec, a.values - b.values);
}

inline Field2D operator*(cplx s, const Field2D& a) { return Field2D(a.spec, s * a.values); }

}  // namespace rzk

#endif  // RZK_GRID_HPP

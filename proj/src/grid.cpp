#include "rzk/grid.hpp"

#include <cstdlib>
#include <map>
#include <mutex>
#include <tuple>

#include <fftw3.h>

namespace rzk {

namespace {

std::mutex& fft_mutex()
{
    static std::mutex m;
    return m;
}

// Plans are keyed by (n0, n1, sign); n1 == 0 means a 1D plan.
struct PlanCache {
    std::map<std::tuple<int, int, int>, fftw_plan> plans;
    bool threads_ready = false;
    int threads = 1;

    ~PlanCache()
    {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

void init_threads_locked()
{
    auto& c = cache();
    if (c.threads_ready) return;
    c.threads_ready = true;
    fftw_init_threads();
    if (const char* env = std::getenv("THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) c.threads = t;
    }
    fftw_plan_with_nthreads(c.threads);
}

// Returns a plan that can be reused via fftw_execute_dft on any aligned-enough
// buffer of the same shape. FFTW_ESTIMATE keeps planning deterministic.
fftw_plan get_plan_locked(int n0, int n1, int sign)
{
    init_threads_locked();
    auto& c = cache();
    const auto key = std::make_tuple(n0, n1, sign);
    auto it = c.plans.find(key);
    if (it != c.plans.end()) return it->second;
    const std::size_t n = std::size_t(n0) * std::size_t(n1 == 0 ? 1 : n1);
    auto* buf = fftw_alloc_complex(n);
    fftw_plan p = n1 == 0
        ? fftw_plan_dft_1d(n0, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(n0, n1, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buf);
    if (!p) throw Error("FFTW planning failed");
    c.plans.emplace(key, p);
    return p;
}

void execute(cplx* data, int n0, int n1, int sign)
{
    fftw_plan p;
    {
        std::lock_guard<std::mutex> lock(fft_mutex());
        p = get_plan_locked(n0, n1, sign);
    }
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(p, d, d);
}

void check_shape(const GridSpec& s, const CArray2& a, const char* what)
{
    if (a.rows() != s.nx || a.cols() != s.ny) {
        throw StructuralError(std::string(what) + " shape " + std::to_string(a.rows()) + "x" +
                              std::to_string(a.cols()) + " does not match grid " +
                              std::to_string(s.nx) + "x" + std::to_string(s.ny));
    }
}

}  // namespace

GridSpec GridSpec::make(int nx, int ny, double lx, double ly)
{
    GridSpec g{nx, ny, lx, ly};
    g.validate();
    return g;
}

void GridSpec::validate() const
{
    if (nx < 8 || nx % 2 != 0) throw ConfigError("nx must be even >= 8");
    if (ny < 8 || ny % 2 != 0) throw ConfigError("ny must be even >= 8");
    if (!(lx > 0) || !std::isfinite(lx)) throw ConfigError("lx must be positive");
    if (!(ly > 0) || !std::isfinite(ly)) throw ConfigError("ly must be positive");
}

RArray1 GridSpec::xs() const
{
    RArray1 r(nx);
    for (int i = 0; i < nx; ++i) r(i) = x(i);
    return r;
}

RArray1 GridSpec::ys() const
{
    RArray1 r(ny);
    for (int j = 0; j < ny; ++j) r(j) = y(j);
    return r;
}

RArray1 GridSpec::xis() const
{
    RArray1 r(nx);
    for (int k = 0; k < nx; ++k) r(k) = xi(k);
    return r;
}

RArray1 GridSpec::etas() const
{
    RArray1 r(ny);
    for (int l = 0; l < ny; ++l) r(l) = eta(l);
    return r;
}

Field2D::Field2D(const GridSpec& s) : spec(s), values(CArray2::Zero(s.nx, s.ny)) {}

Field2D::Field2D(const GridSpec& s, CArray2 v) : spec(s), values(std::move(v))
{
    check_shape(spec, values, "field");
}

Spectrum2D::Spectrum2D(const GridSpec& s) : spec(s), coeffs(CArray2::Zero(s.nx, s.ny)) {}

Spectrum2D::Spectrum2D(const GridSpec& s, CArray2 c) : spec(s), coeffs(std::move(c))
{
    check_shape(spec, coeffs, "spectrum");
}

// Column-major nx x ny storage is row-major ny x nx to FFTW.
void forward_inplace(CArray2& a)
{
    const int nx = int(a.rows()), ny = int(a.cols());
    execute(a.data(), ny, nx, FFTW_FORWARD);
    a *= 1.0 / std::sqrt(double(nx) * ny);
}

void inverse_inplace(CArray2& a)
{
    const int nx = int(a.rows()), ny = int(a.cols());
    execute(a.data(), ny, nx, FFTW_BACKWARD);
    a *= 1.0 / std::sqrt(double(nx) * ny);
}

Spectrum2D forward_transform(const Field2D& f)
{
    check_shape(f.spec, f.values, "field");
    CArray2 a = f.values;
    forward_inplace(a);
    return Spectrum2D(f.spec, std::move(a));
}

Field2D inverse_transform(const Spectrum2D& F)
{
    check_shape(F.spec, F.coeffs, "spectrum");
    CArray2 a = F.coeffs;
    inverse_inplace(a);
    return Field2D(F.spec, std::move(a));
}

CArray1 forward_transform_1d(const CArray1& a)
{
    CArray1 r = a;
    execute(r.data(), int(r.size()), 0, FFTW_FORWARD);
    r *= 1.0 / std::sqrt(double(r.size()));
    return r;
}

CArray1 inverse_transform_1d(const CArray1& a)
{
    CArray1 r = a;
    execute(r.data(), int(r.size()), 0, FFTW_BACKWARD);
    r *= 1.0 / std::sqrt(double(r.size()));
    return r;
}

RArray1 wavenumbers_1d(int n, double l)
{
    RArray1 k(n);
    for (int i = 0; i < n; ++i) k(i) = std::numbers::pi / l * GridSpec::signed_index(i, n);
    return k;
}

void set_fft_threads(int threads)
{
    if (threads <= 0) return;
    std::lock_guard<std::mutex> lock(fft_mutex());
    init_threads_locked();
    auto& c = cache();
    if (c.threads == threads) return;
    // Existing plans keep their thread count; drop them so new ones pick it up.
    for (auto& [k, p] : c.plans) fftw_destroy_plan(p);
    c.plans.clear();
    c.threads = threads;
    fftw_plan_with_nthreads(threads);
}

double l2_norm(const Field2D& f)
{
    return std::sqrt(f.values.abs2().sum() * f.spec.dx() * f.spec.dy());
}

double l2_norm(const Spectrum2D& F)
{
    return std::sqrt(F.coeffs.abs2().sum() * F.spec.dx() * F.spec.dy());
}

double max_abs(const Field2D& f)
{
    return f.values.size() ? f.values.abs().maxCoeff() : 0.0;
}

double imag_residue(const Field2D& f)
{
    const double m = max_abs(f);
    if (m == 0.0) return 0.0;
    return f.values.imag().abs().maxCoeff() / m;
}

CArray2 continuum_spectrum(const Spectrum2D& F)
{
    const auto& s = F.spec;
    const double scale = s.dx() * s.dy() / (2.0 * std::numbers::pi) * std::sqrt(double(s.size()));
    CArray2 out(s.nx, s.ny);
    for (int l = 0; l < s.ny; ++l) {
        const int sl = GridSpec::signed_index(l, s.ny);
        for (int k = 0; k < s.nx; ++k) {
            const int sk = GridSpec::signed_index(k, s.nx);
            const double sign = ((sk + sl) & 1) ? -1.0 : 1.0;
            out(k, l) = scale * sign * F.coeffs(k, l);
        }
    }
    return out;
}

Spectrum2D from_continuum(const GridSpec& spec, const CArray2& fhat)
{
    check_shape(spec, fhat, "continuum spectrum");
    const double scale = spec.dx() * spec.dy() / (2.0 * std::numbers::pi) * std::sqrt(double(spec.size()));
    Spectrum2D F(spec);
    for (int l = 0; l < spec.ny; ++l) {
        const int sl = GridSpec::signed_index(l, spec.ny);
        for (int k = 0; k < spec.nx; ++k) {
            const int sk = GridSpec::signed_index(k, spec.nx);
            const double sign = ((sk + sl) & 1) ? -1.0 : 1.0;
            F.coeffs(k, l) = sign * fhat(k, l) / scale;
        }
    }
    return F;
}

void hermitian_nyquist(CArray2& m)
{
    const int nx = int(m.rows()), ny = int(m.cols());
    const CArray2 old = m;
    auto fix = [&](int k, int l) {
        const int kp = (nx - k) % nx, lp = (ny - l) % ny;
        m(k, l) = 0.5 * (old(k, l) + std::conj(old(kp, lp)));
    };
    for (int l = 0; l < ny; ++l) fix(nx / 2, l);
    for (int k = 0; k < nx; ++k) fix(k, ny / 2);
}

RArray2 dealias_mask(const GridSpec& spec)
{
    RArray2 m(spec.nx, spec.ny);
    for (int l = 0; l < spec.ny; ++l) {
        const int sl = std::abs(GridSpec::signed_index(l, spec.ny));
        for (int k = 0; k < spec.nx; ++k) {
            const int sk = std::abs(GridSpec::signed_index(k, spec.nx));
            m(k, l) = (3 * sk < spec.nx && 3 * sl < spec.ny) ? 1.0 : 0.0;
        }
    }
    return m;
}

}  // namespace rzk

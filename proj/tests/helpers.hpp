#ifndef RZK_TEST_HELPERS_HPP
#define RZK_TEST_HELPERS_HPP

#include <cstdint>
#include <random>

#include "rzk/grid.hpp"

namespace testing {

inline rzk::GridSpec small_grid(int nx = 64, int ny = 64, double lx = 10.0, double ly = 10.0)
{
    return rzk::GridSpec::make(nx, ny, lx, ly);
}

inline rzk::Field2D gaussian(const rzk::GridSpec& g, double amp = 1.0, double sx = 1.0, double sy = 1.0)
{
    return rzk::sample([=](double x, double y) { return amp * std::exp(-x * x / (sx * sx) - y * y / (sy * sy)); }, g);
}

inline rzk::Field2D random_field(const rzk::GridSpec& g, std::uint64_t seed, bool real = false)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> n(0.0, 1.0);
    rzk::Field2D f(g);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) f.values(i, j) = rzk::cplx(n(rng), real ? 0.0 : n(rng));
    return f;
}

// Smooth random field: a few Gaussian bumps with random centres, widths and modulations.
inline rzk::Field2D random_smooth(const rzk::GridSpec& g, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> c(-2.0, 2.0), w(0.8, 1.6), a(-1.0, 1.0), k(-1.5, 1.5);
    double p[4][5];
    for (auto& b : p)
        for (double& v : b) v = 0.0;
    for (auto& b : p) {
        b[0] = c(rng);
        b[1] = c(rng);
        b[2] = w(rng);
        b[3] = a(rng);
        b[4] = k(rng);
    }
    return rzk::sample([&](double x, double y) {
        double v = 0.0;
        for (const auto& b : p) {
            const double dx = x - b[0], dy = y - b[1];
            v += b[3] * std::cos(b[4] * x) * std::exp(-(dx * dx + dy * dy) / (b[2] * b[2]));
        }
        return v;
    }, g);
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace testing



#include <functional>

namespace testing {

// Central j-th difference with step h, O(h^2), then two Richardson levels.
inline rzk::cplx richardson_derivative(const std::function<rzk::cplx(double)>& f, double x, int j, double h)
{
    auto diff = [&](double s) {
        rzk::cplx acc = 0.0;
        double binom = 1.0;
        for (int m = 0; m <= j; ++m) {
            acc += ((m % 2) ? -binom : binom) * f(x + (0.5 * j - m) * s);
            binom = binom * (j - m) / (m + 1);
        }
        return acc / std::pow(s, j);
    };
    const rzk::cplx d1 = diff(h), d2 = diff(h / 2), d4 = diff(h / 4);
    const rzk::cplx r1 = (4.0 * d2 - d1) / 3.0, r2 = (4.0 * d4 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

}  // namespace testing
#endif

#ifndef RZK_NORMS_HPP
#define RZK_NORMS_HPP

#include <utility>
#include <vector>

#include "rzk/grid.hpp"
#include "rzk/multipliers.hpp"

namespace rzk {

/// Indices of the space H^{s1,s2} intersected with L^2 weighted by |x|^r1 + |y|^r2.
struct NormIndices {
    double s1 = 2.0;
    double s2 = 5.0;
    double r1 = 2.0;
    double r2 = 2.0;

    void validate() const;
    bool well_posed() const;

    bool operator==(const NormIndices&) const = default;
};

double sobolev_aniso(const Field2D& f, double s1, double s2);
double sobolev_aniso(const Spectrum2D& F, double s1, double s2);
double weighted_l2(const Field2D& f, double r1, double r2);
double f_space_norm(const Field2D& f, const NormIndices& idx);

struct EmbeddingReport {
    bool condition = false;
    double constant = 0.0;  // max ||f||_inf / sobolev_aniso(f); 0 when condition is false
};

EmbeddingReport embedding_check(double s1, double s2, const std::vector<Field2D>& samples);

/// ||fg||_F / (||f||_F ||g||_F).
double algebra_ratio(const Field2D& f, const Field2D& g, const NormIndices& idx);

struct InterpolationSides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// J is taken along u_axis, the weight <v> along the other axis.
InterpolationSides interpolation_check(const Field2D& f, double a, double b, double theta, Axis u_axis);

}  // namespace rzk

#endif  // RZK_NORMS_HPP

#pragma once

#include <vector>

#include "ringwave/errors.hpp"

namespace ringwave {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

// Uniform node grid on [start, end], endpoints included.
struct UniformGrid {
    double start = 0.0;
    double end = 1.0;
    int count = 2;

    UniformGrid() = default;
    UniformGrid(double a, double b, int n);

    double h() const { return (end - start) / (count - 1); }
    double node(int i) const { return start + i * h(); }
    bool same_as(const UniformGrid& other, double tol = 1e-12) const;
};

// Samples on a uniform grid; linear interpolation between nodes,
// clamped to the end values outside the span.
struct GridFunction {
    UniformGrid grid;
    std::vector<double> values;

    GridFunction() = default;
    GridFunction(UniformGrid g, std::vector<double> v);

    double eval(double x) const;
};

// Composite trapezoid over the whole span.
double integrate(const GridFunction& f);

// Composite Simpson; requires an odd node count.
double integrate_simpson(const GridFunction& f);

// Running trapezoid antiderivative, zero at the left endpoint.
GridFunction cumulative_integral(const GridFunction& f);

// First or second derivative. Interior stencils are centered second
// order; ends use one-sided stencils of matching order (five point
// for the second derivative). Requires count >= 5.
GridFunction differentiate(const GridFunction& f, int order);

// L2 pairing of two functions sharing a grid.
double l2_inner(const GridFunction& f, const GridFunction& g);
double l2_norm(const GridFunction& f);

} // namespace ringwave

#pragma once

#include "ringwave/potential.hpp"

namespace ringwave {

enum class KernelKind { w1, w2 };
enum class Side { positive, negative };

// Characteristic trace w(x, |x|) as a function of |x| on [0, tmax].
// Kind w1 integrates -q/4 along x > 0; kind w2 integrates +q/4 there.
// Both kinds share the x < 0 trace, the integral of -q/4 run leftward
// from the corner value w(0, 0) = 0. Samples live at half-step spacing
// so they land on the solver's characteristic nodes.
GridFunction characteristic_data(const Potential& q, KernelKind kind, Side side, double h,
                                 double tmax, PotentialMode mode = PotentialMode::compact);

// Wave-representation kernel w(x, s) on the triangle |x| < s < tmax,
// solved in characteristic coordinates xi = s + x, eta = s - x where
// the equation reads w_xi_eta = -q((xi - eta)/2) w / 4. Storage is the
// triangular array rows[i][j] ~ w at (xi, eta) = (i, j) * hstep.
struct GoursatKernel {
    KernelKind kind = KernelKind::w1;
    PotentialMode mode = PotentialMode::compact;
    double hstep = 0.0;
    double tmax = 0.0;
    int nt = 0; // tmax / hstep; marching covers i + j <= 2 (nt + 1)
    std::vector<std::vector<double>> rows;

    int diagonals() const { return 2 * (nt + 1); }
    double node(int i, int j) const { return rows[i][j]; }

    // Bilinear value at (x, s); zero outside the light cone s < |x|.
    double value(double x, double s) const;

    // Trace w(x0, t) at a node-aligned interior x0 (x0 multiple of
    // hstep/2, t multiple of hstep, |x0| <= t).
    double trace(double x0, double t) const;

    // x-derivative at node-aligned (x0, t), centered across the
    // characteristic grid; at x0 = 0 this is the average of the two
    // one-sided differences.
    double xderiv(double x0, double t) const;

    // Discrepancy of the two one-sided traces and x-derivatives at
    // x = 0, maximized over t; both should shrink at second order.
    double continuity_defect(double t) const;
    double deriv_continuity_defect(double t) const;
};

GoursatKernel solve_goursat(const Potential& q, KernelKind kind, double h, double tmax,
                            PotentialMode mode);

} // namespace ringwave

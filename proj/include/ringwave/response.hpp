#pragma once

#include "ringwave/control.hpp"
#include "ringwave/goursat.hpp"

namespace ringwave {

// Regular part of the response operator: 2x2 kernel r_ij sampled on
// [0, tmax], plus natoms singular atoms at t = 2 k pi, k = 0..natoms-1.
// Each atom acts diagonally on a control: -f1'(t - 2 k pi)/2 in the
// first row and +f2(t - 2 k pi)/2 in the second. The atoms are kept
// symbolic; only the regular kernel is sampled.
struct ResponseKernel {
    UniformGrid tgrid;
    std::vector<double> r11, r12, r21, r22;
    int natoms = 1;

    GridFunction entry(int i, int j) const;
    double tmax() const { return tgrid.end; }
};

// Short-horizon kernel (tmax <= 2 pi) from the two wave kernels:
// r11 = dx w1(0, t), r12 = dx w2(0, t), r21 = -w1(0, t),
// r22 = -w2(0, t). The x-derivative at zero averages the two one-sided
// characteristic differences; at t = 0 the limits are
// r11(0) = -q(0)/4 and r12 = r21 = r22 = 0.
ResponseKernel response_kernel(const GoursatKernel& w1, const GoursatKernel& w2);

// Kernel on (0, 2 n pi) with natoms = n. The regular part collects the
// boundary traces of the circulating representation: shifted copies of
// the wave kernels at x = +-2 m pi enter once they are inside the
// light cone.
ResponseKernel long_time_response(const Potential& q, int n, double h);

// output(t) = -1/2 (f1'(t), -f2(t)) + convolution with the regular
// kernel, plus the shifted atom images for natoms > 1.
Control apply_response(const ResponseKernel& R, const Control& F);

} // namespace ringwave

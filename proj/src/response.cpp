#include "ringwave/response.hpp"

#include <cmath>
#include <utility>

namespace ringwave {

GridFunction ResponseKernel::entry(int i, int j) const {
    if (i == 1 && j == 1) return GridFunction(tgrid, r11);
    if (i == 1 && j == 2) return GridFunction(tgrid, r12);
    if (i == 2 && j == 1) return GridFunction(tgrid, r21);
    if (i == 2 && j == 2) return GridFunction(tgrid, r22);
    throw invalid_input("response entry indices must be 1 or 2");
}

namespace {

ResponseKernel assemble(const GoursatKernel& w1, const GoursatKernel& w2, int natoms) {
    if (w1.kind != KernelKind::w1 || w2.kind != KernelKind::w2)
        throw invalid_input("response assembly expects a (w1, w2) kernel pair");
    if (std::abs(w1.hstep - w2.hstep) > 1e-12 || std::abs(w1.tmax - w2.tmax) > 1e-12)
        throw invalid_input("wave kernels must share grid and horizon");
    const double hc = w1.hstep;
    const int nt = w1.nt;
    ResponseKernel R;
    R.natoms = natoms;
    R.tgrid = UniformGrid(0.0, w1.tmax, nt + 1);
    R.r11.assign(nt + 1, 0.0);
    R.r12.assign(nt + 1, 0.0);
    R.r21.assign(nt + 1, 0.0);
    R.r22.assign(nt + 1, 0.0);

    // corner limit r11(0) = -q(0)/4, recovered from the slope of the
    // characteristic trace with one extrapolation step
    const double step = 0.5 * hc;
    R.r11[0] = 2.0 * w1.rows[1][0] / step - w1.rows[2][0] / (2.0 * step);
    for (int m = 1; m <= nt; ++m) {
        double t = m * hc;
        R.r11[m] = w1.xderiv(0.0, t);
        R.r12[m] = w2.xderiv(0.0, t);
        R.r21[m] = -w1.trace(0.0, t);
        R.r22[m] = -w2.trace(0.0, t);
    }

    // circulating images: kernels shifted by whole turns join the
    // trace once t passes the shift
    for (int k = 1; k < natoms; ++k) {
        double shift = kTwoPi * k;
        for (int m = 0; m <= nt; ++m) {
            double t = m * hc;
            if (t <= shift) continue;
            R.r11[m] += w1.xderiv(shift, t) + w1.xderiv(-shift, t);
            R.r12[m] += w2.xderiv(shift, t) + w2.xderiv(-shift, t);
            R.r21[m] -= w1.trace(shift, t) + w1.trace(-shift, t);
            R.r22[m] -= w2.trace(shift, t) + w2.trace(-shift, t);
        }
    }
    return R;
}

} // namespace

ResponseKernel response_kernel(const GoursatKernel& w1, const GoursatKernel& w2) {
    return assemble(w1, w2, 1);
}

ResponseKernel long_time_response(const Potential& q, int n, double h) {
    if (n < 1) throw invalid_input("long_time_response needs n >= 1");
    if (h <= 0.0) throw invalid_input("long_time_response needs h > 0");
    double tmax = kTwoPi * n;
    double cells = (tmax / h) * (tmax / h) * 2.0;
    if (cells > 6.4e7)
        throw invalid_input("characteristic grid too large; coarsen h or shorten the horizon");
    GoursatKernel w1 = solve_goursat(q, KernelKind::w1, h, tmax, PotentialMode::periodic);
    GoursatKernel w2 = solve_goursat(q, KernelKind::w2, h, tmax, PotentialMode::periodic);
    return assemble(w1, w2, n);
}

Control apply_response(const ResponseKernel& R, const Control& F) {
    const UniformGrid& g = F.grid;
    const int n = g.count;
    const double hF = g.h();
    GridFunction f1p = differentiate(GridFunction(g, F.f1), 1);

    GridFunction k11 = R.entry(1, 1), k12 = R.entry(1, 2);
    GridFunction k21 = R.entry(2, 1), k22 = R.entry(2, 2);

    std::vector<double> out1(n, 0.0), out2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double t = g.node(i);
        double a1 = 0.0, a2 = 0.0;
        for (int j = 0; j <= i; ++j) {
            double s = g.node(j);
            double w = (j == 0 || j == i) ? 0.5 * hF : hF;
            double u1 = F.f1[i - j];
            double u2 = F.f2[i - j];
            a1 += w * (k11.eval(s) * u1 + k12.eval(s) * u2);
            a2 += w * (k21.eval(s) * u1 + k22.eval(s) * u2);
        }
        out1[i] = a1;
        out2[i] = a2;
        for (int k = 0; k < R.natoms; ++k) {
            double arg = t - kTwoPi * k;
            if (arg < -1e-12) break;
            out1[i] += -0.5 * (k == 0 ? f1p.values[i] : f1p.eval(arg));
            out2[i] += 0.5 * (k == 0 ? F.f2[i] : F.f2_at(arg));
        }
    }
    return Control(g, std::move(out1), std::move(out2), std::vector<double>(n, 0.0));
}

} // namespace ringwave

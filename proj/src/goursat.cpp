#include "ringwave/goursat.hpp"

#include <cmath>
#include <utility>

namespace ringwave {

namespace {

// Trace samples at x_k = k * hc / 2, k = 0..nnodes-1.
std::vector<double> trace_samples(const Potential& q, KernelKind kind, Side side, double hc,
                                  int nnodes, PotentialMode mode) {
    const double step = 0.5 * hc;
    std::vector<double> out(nnodes, 0.0);
    const double sgn = (side == Side::positive && kind == KernelKind::w2) ? 0.25 : -0.25;
    double qprev = extend(q, 0.0, mode);
    double acc = 0.0;
    for (int k = 1; k < nnodes; ++k) {
        double xk = (side == Side::positive ? 1.0 : -1.0) * k * step;
        double qk = extend(q, xk, mode);
        // signed cumulative integral of q from 0 to x_k
        acc += (side == Side::positive ? 0.5 : -0.5) * step * (qprev + qk);
        out[k] = sgn * acc;
        qprev = qk;
    }
    return out;
}

} // namespace

GridFunction characteristic_data(const Potential& q, KernelKind kind, Side side, double h,
                                 double tmax, PotentialMode mode) {
    if (h <= 0.0 || tmax <= 0.0) throw invalid_input("characteristic data needs h > 0, tmax > 0");
    int nt = std::max<int>(1, static_cast<int>(std::llround(tmax / h)));
    double hc = tmax / nt;
    auto vals = trace_samples(q, kind, side, hc, 2 * nt + 1, mode);
    return GridFunction(UniformGrid(0.0, tmax, 2 * nt + 1), std::move(vals));
}

GoursatKernel solve_goursat(const Potential& q, KernelKind kind, double h, double tmax,
                            PotentialMode mode) {
    if (h <= 0.0 || tmax <= 0.0) throw invalid_input("solve_goursat needs h > 0, tmax > 0");
    GoursatKernel k;
    k.kind = kind;
    k.mode = mode;
    k.nt = std::max<int>(1, static_cast<int>(std::llround(tmax / h)));
    k.hstep = tmax / k.nt;
    k.tmax = tmax;

    const int nd = k.diagonals(); // march to i + j <= nd so the hypotenuse stays interpolable
    k.rows.resize(nd + 1);
    for (int i = 0; i <= nd; ++i) k.rows[i].assign(nd + 1 - i, 0.0);

    auto pos = trace_samples(q, kind, Side::positive, k.hstep, nd + 1, mode);
    auto neg = trace_samples(q, kind, Side::negative, k.hstep, nd + 1, mode);
    for (int i = 0; i <= nd; ++i) k.rows[i][0] = pos[i];
    for (int j = 0; j <= nd; ++j) k.rows[0][j] = neg[j];

    // potential at cell centers, constant along grid diagonals d = i - j
    std::vector<double> qdiag(2 * nd - 3 > 0 ? 2 * nd - 3 : 1, 0.0);
    const int off = nd - 2;
    for (int d = -(nd - 2); d <= nd - 2; ++d)
        qdiag[d + off] = extend(q, 0.5 * d * k.hstep, mode);

    // box scheme: the cell integral of w_xi_eta matched against
    // -(q/4) * w at the cell center, w there taken as the mean of the
    // two known neighbors
    const double c = k.hstep * k.hstep / 8.0;
    for (int i = 1; i <= nd - 1; ++i) {
        auto& ri = k.rows[i];
        auto& rm = k.rows[i - 1];
        for (int j = 1; j <= nd - i; ++j) {
            double cq = c * qdiag[(i - j) + off];
            ri[j] = rm[j] + ri[j - 1] - rm[j - 1] - cq * (rm[j] + ri[j - 1]);
        }
    }
    return k;
}

double GoursatKernel::value(double x, double s) const {
    const double tol = 1e-12 * (tmax + 1.0);
    double xi = s + x;
    double eta = s - x;
    if (xi < -tol || eta < -tol) return 0.0;
    if (s > tmax + tol) throw invalid_input("kernel evaluated beyond its horizon");
    if (xi < 0.0) xi = 0.0;
    if (eta < 0.0) eta = 0.0;
    double fi = xi / hstep;
    double fj = eta / hstep;
    const int nd = diagonals();
    int i = std::min(static_cast<int>(fi), nd - 2);
    int j = std::min(static_cast<int>(fj), nd - 2 - i);
    double a = fi - i;
    double b = fj - j;
    return (1.0 - a) * (1.0 - b) * rows[i][j] + a * (1.0 - b) * rows[i + 1][j] +
           (1.0 - a) * b * rows[i][j + 1] + a * b * rows[i + 1][j + 1];
}

namespace {

int aligned_index(double v, double hstep, const char* what) {
    int i = static_cast<int>(std::llround(v / hstep));
    if (std::abs(i * hstep - v) > 1e-9 * (std::abs(v) + 1.0))
        throw invalid_input(std::string("point is not aligned with the characteristic grid: ") +
                            what);
    return i;
}

} // namespace

double GoursatKernel::trace(double x0, double t) const {
    int i = aligned_index(t + x0, hstep, "trace");
    int j = aligned_index(t - x0, hstep, "trace");
    if (i < 0 || j < 0 || i + j > diagonals()) throw invalid_input("trace outside kernel domain");
    return rows[i][j];
}

double GoursatKernel::xderiv(double x0, double t) const {
    int i = aligned_index(t + x0, hstep, "xderiv");
    int j = aligned_index(t - x0, hstep, "xderiv");
    if (i < 1 || j < 1 || i + j > diagonals()) throw invalid_input("xderiv outside kernel domain");
    return (rows[i + 1][j - 1] - rows[i - 1][j + 1]) / (2.0 * hstep);
}

double GoursatKernel::continuity_defect(double t) const {
    int m = aligned_index(t, hstep, "continuity");
    if (m < 2 || 2 * m > diagonals()) throw invalid_input("continuity probe outside domain");
    double right = 2.0 * rows[m + 1][m - 1] - rows[m + 2][m - 2];
    double left = 2.0 * rows[m - 1][m + 1] - rows[m - 2][m + 2];
    return std::abs(right - left);
}

double GoursatKernel::deriv_continuity_defect(double t) const {
    int m = aligned_index(t, hstep, "continuity");
    if (m < 2 || 2 * m > diagonals()) throw invalid_input("continuity probe outside domain");
    double w0 = rows[m][m];
    double dp = (-3.0 * w0 + 4.0 * rows[m + 1][m - 1] - rows[m + 2][m - 2]) / (2.0 * hstep);
    double dm = (3.0 * w0 - 4.0 * rows[m - 1][m + 1] + rows[m - 2][m + 2]) / (2.0 * hstep);
    return std::abs(dp - dm);
}

} // namespace ringwave

#include "ringwave/connecting.hpp"

#include <cmath>

#include "ringwave/errors.hpp"

namespace ringwave {

namespace {

std::vector<double> trapezoid_weights(const UniformGrid& g) {
    std::vector<double> w(g.count, g.h());
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

} // namespace

ConnectingKernel build_connecting_kernel(const ResponseKernel& R, double T) {
    if (T <= 0.0 || T > kPi + 1e-12) {
        throw invalid_input("build_connecting_kernel: horizon must lie in (0, pi]");
    }
    if (2.0 * T > R.tmax() + 1e-9) {
        throw invalid_input("build_connecting_kernel: response must cover [0, 2T]");
    }
    GridFunction r21f = R.entry(2, 1);
    GridFunction r22f = R.entry(2, 2);
    GridFunction p1 = cumulative_integral(R.entry(1, 1));
    GridFunction p12 = cumulative_integral(R.entry(1, 2));
    auto pt1 = [&](double s) { return s >= 0.0 ? p12.eval(s) : -p12.eval(-s); };
    auto rt21 = [&](double s) { return s >= 0.0 ? r21f.eval(s) : -r21f.eval(-s); };

    int count = std::max(2, static_cast<int>(std::lround(T / R.tgrid.h()))) + 1;
    UniformGrid grid(0.0, T, count);
    ConnectingKernel K{T, grid, Eigen::MatrixXd(count, count), Eigen::MatrixXd(count, count),
                       Eigen::MatrixXd(count, count), Eigen::MatrixXd(count, count)};
    for (int i = 0; i < count; ++i) {
        double t = grid.node(i);
        for (int j = 0; j < count; ++j) {
            double u = t + grid.node(j);        // commutative, keeps diagonal blocks exact
            double d = t - grid.node(j);
            double mir = 2.0 * T - u;
            K.C11(i, j) = 0.5 * (p1.eval(mir) - p1.eval(std::abs(d)));
            K.C12(i, j) = 0.5 * (pt1(mir) - pt1(d));
            K.C21(i, j) = 0.5 * (rt21(d) + rt21(mir));
            K.C22(i, j) = 0.5 * (r22f.eval(std::abs(d)) + r22f.eval(mir));
        }
    }
    return K;
}

Control apply_connecting(const ConnectingKernel& K, const Control& F) {
    if (!F.grid.same_as(K.grid, 1e-9)) {
        throw invalid_input("apply_connecting: control grid does not match the kernel grid");
    }
    int n = K.grid.count;
    std::vector<double> w = trapezoid_weights(K.grid);
    std::vector<double> out1(n, 0.0), out2(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double a1 = 0.5 * F.f1[i];
        double a2 = 0.5 * F.f2[i];
        for (int j = 0; j < n; ++j) {
            a1 += w[j] * (K.C11(i, j) * F.f1[j] + K.C12(i, j) * F.f2[j]);
            a2 += w[j] * (K.C21(i, j) * F.f1[j] + K.C22(i, j) * F.f2[j]);
        }
        out1[i] = a1;
        out2[i] = a2;
    }
    return Control(K.grid, std::move(out1), std::move(out2), std::vector<double>(n, 0.0));
}

Control time_reversal(const Control& F, double T) {
    if (std::abs(F.grid.start) > 1e-9 || std::abs(F.grid.end - T) > 1e-9 * (T + 1.0)) {
        throw invalid_input("time_reversal: control must live on [0, T]");
    }
    int n = F.grid.count;
    std::vector<double> f1(n), f2(n), f2p(n);
    for (int i = 0; i < n; ++i) {
        f1[i] = F.f1[n - 1 - i];
        f2[i] = F.f2[n - 1 - i];
        f2p[i] = -F.f2p[n - 1 - i];
    }
    return Control(F.grid, std::move(f1), std::move(f2), std::move(f2p));
}

GLKernel build_gl_kernel(const ConnectingKernel& K) {
    if (std::abs(K.T - kPi) > 1e-9) {
        throw invalid_input("build_gl_kernel: kernel horizon must equal pi");
    }
    int n = K.grid.count;
    int m = n - 1;
    GLKernel G{K.grid, Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n), Eigen::MatrixXd(n, n),
               Eigen::MatrixXd(n, n)};
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            G.C11(i, j) = 2.0 * K.C11(m - i, m - j);
            G.C12(i, j) = 2.0 * K.C12(m - i, m - j);
            G.C21(i, j) = 2.0 * K.C21(m - i, m - j);
            G.C22(i, j) = 2.0 * K.C22(m - i, m - j);
        }
    }
    return G;
}

} // namespace ringwave

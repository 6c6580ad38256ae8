#include "ringwave/wavefield.hpp"

#include <cmath>

#include "ringwave/errors.hpp"

namespace ringwave {

namespace {

// Trapezoid rule over [a, b] with spacing at most hstep and exact endpoints.
template <typename G>
double integral(double a, double b, double hstep, G&& g) {
    if (b - a <= 1e-14) {
        return 0.0;
    }
    int n = std::max(1, static_cast<int>(std::ceil((b - a) / hstep - 1e-9)));
    double dt = (b - a) / n;
    double acc = 0.5 * (g(a) + g(b));
    for (int k = 1; k < n; ++k) {
        acc += g(a + k * dt);
    }
    return acc * dt;
}

} // namespace

WaveKernels make_wave_kernels(const Potential& q, double h, int turns) {
    if (turns < 1) {
        throw invalid_input("make_wave_kernels: turns must be at least 1");
    }
    PotentialMode mode = turns == 1 ? PotentialMode::compact : PotentialMode::periodic;
    double tmax = kTwoPi * turns;
    WaveKernels K{solve_goursat(q, KernelKind::w1, h, tmax, mode),
                  solve_goursat(q, KernelKind::w2, h, tmax, mode), turns};
    return K;
}

double wave_field_value(const WaveKernels& K, const Control& F, double x, double t) {
    if (x < -1e-12 || x > kTwoPi + 1e-12) {
        throw invalid_input("wave_field_value: x must lie in [0, 2 pi]");
    }
    if (t < 0.0 || t > K.w1.tmax + 1e-9 * (K.w1.tmax + 1.0)) {
        throw invalid_input("wave_field_value: t beyond the kernel horizon");
    }
    double hstep = K.w1.hstep;
    double total = 0.0;
    for (int k = 1; k <= K.turns; ++k) {
        double a = x + kTwoPi * (k - 1); // clockwise arrival time
        if (t > a) {
            total += 0.5 * (F.f1_at(t - a) - F.f2_at(t - a));
            total += integral(a, t, hstep, [&](double s) {
                return K.w1.value(a, s) * F.f1_at(t - s) + K.w2.value(a, s) * F.f2_at(t - s);
            });
        }
        double b = kTwoPi * k - x; // counterclockwise arrival time
        if (t > b) {
            total -= 0.5 * (F.f1_at(t - b) + F.f2_at(t - b));
            double xs = x - kTwoPi * k;
            total += integral(b, t, hstep, [&](double s) {
                return K.w1.value(xs, s) * F.f1_at(t - s) + K.w2.value(xs, s) * F.f2_at(t - s);
            });
        }
    }
    return total;
}

WaveField wave_field_on(const WaveKernels& K, const Control& F, const UniformGrid& xg,
                        const UniformGrid& tg) {
    std::vector<std::vector<double>> vals(tg.count, std::vector<double>(xg.count, 0.0));
    for (int it = 0; it < tg.count; ++it) {
        double t = tg.node(it);
        for (int ix = 0; ix < xg.count; ++ix) {
            vals[it][ix] = wave_field_value(K, F, xg.node(ix), t);
        }
    }
    return WaveField{xg, tg, std::move(vals)};
}

WaveField wave_field(const Potential& q, const Control& F, double T) {
    if (T <= 0.0) {
        throw invalid_input("wave_field: horizon must be positive");
    }
    if (T > kTwoPi + 1e-12) {
        throw invalid_input("wave_field: horizon exceeds one turn, use wave_field_long");
    }
    double h = kTwoPi / 128.0;
    WaveKernels K = make_wave_kernels(q, h, 1);
    UniformGrid xg(0.0, kTwoPi, 129);
    UniformGrid tg(0.0, T, std::max(2, static_cast<int>(std::lround(T / h))) + 1);
    return wave_field_on(K, F, xg, tg);
}

WaveField wave_field_long(const Potential& q, const Control& F, double T, int n) {
    if (n < 1) {
        throw invalid_input("wave_field_long: turn count must be at least 1");
    }
    if (T <= 0.0) {
        throw invalid_input("wave_field_long: horizon must be positive");
    }
    if (T > kTwoPi * n + 1e-12) {
        throw invalid_input("wave_field_long: horizon exceeds the configured turn count");
    }
    double h = kTwoPi / 128.0;
    WaveKernels K = make_wave_kernels(q, h, n);
    UniformGrid xg(0.0, kTwoPi, 129);
    UniformGrid tg(0.0, T, std::max(2, static_cast<int>(std::lround(T / h))) + 1);
    return wave_field_on(K, F, xg, tg);
}

StateFunction control_to_state(const Potential& q, const Control& F, double T, double h) {
    if (T <= 0.0 || T > kPi + 1e-12) {
        throw invalid_input("control_to_state: horizon must lie in (0, pi]");
    }
    if (h <= 0.0) {
        throw invalid_input("control_to_state: step must be positive");
    }
    GoursatKernel w1 = solve_goursat(q, KernelKind::w1, h, T, PotentialMode::compact);
    GoursatKernel w2 = solve_goursat(q, KernelKind::w2, h, T, PotentialMode::compact);
    double hstep = w1.hstep;
    int m = w1.nt;
    // Cell-center sampling: the state jumps across x = 0 whenever
    // f1(T) != 0, so no sample is placed on the jump itself.
    UniformGrid grid(-T + 0.5 * hstep, T - 0.5 * hstep, 2 * m);
    std::vector<double> vals(2 * m, 0.0);
    for (int j = 0; j < 2 * m; ++j) {
        double x = grid.node(j);
        double ax = std::abs(x);
        double sgn = x > 0.0 ? 1.0 : -1.0;
        double v = 0.5 * sgn * F.f1_at(T - ax) - 0.5 * F.f2_at(T - ax);
        v += integral(ax, T, hstep, [&](double s) {
            return w1.value(x, s) * F.f1_at(T - s) + w2.value(x, s) * F.f2_at(T - s);
        });
        vals[j] = v;
    }
    return StateFunction{grid, std::move(vals)};
}

BoundaryTraces boundary_traces(const WaveField& u, const Control&) {
    int nx = u.xgrid.count;
    if (nx < 3) {
        throw invalid_input("boundary_traces: need at least three x nodes");
    }
    double hx = u.xgrid.h();
    int nt = u.tgrid.count;
    BoundaryTraces out{u.tgrid, std::vector<double>(nt), std::vector<double>(nt),
                       std::vector<double>(nt), std::vector<double>(nt)};
    for (int it = 0; it < nt; ++it) {
        const std::vector<double>& row = u.values[it];
        double u0 = row[0];
        double u2 = row[nx - 1];
        double d0 = (-3.0 * row[0] + 4.0 * row[1] - row[2]) / (2.0 * hx);
        double d2 = (3.0 * row[nx - 1] - 4.0 * row[nx - 2] + row[nx - 3]) / (2.0 * hx);
        out.gamma0_1[it] = u0 - u2;
        out.gamma0_2[it] = d0 - d2;
        out.gamma1_1[it] = 0.5 * (d0 + d2);
        out.gamma1_2[it] = 0.5 * (-u0 - u2);
    }
    return out;
}

} // namespace ringwave

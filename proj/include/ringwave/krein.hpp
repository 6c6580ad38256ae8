#pragma once

#include "ringwave/connecting.hpp"
#include "ringwave/potential.hpp"

namespace ringwave {

// Solution of the Cauchy problem -y'' + q y = 0, y(0) = 0, y'(0) = 1,
// as reconstructed from boundary data horizon by horizon.
struct CauchySolution {
    UniformGrid grid; // on [-pi, pi]
    std::vector<double> values;

    double eval(double x) const { return GridFunction(grid, values).eval(x); }
};

struct KreinDiagnostics {
    double condition = 0.0; // 1 / rcond of the discrete system
    double residual = 0.0;  // relative l2 residual of the solve
};

struct KreinReport {
    std::vector<double> condition_numbers; // one per horizon
    double guarded_fraction = 0.0;         // share of y-nodes too close to zero
    double residual_l2 = 0.0;              // worst relative solve residual
};

struct KreinRecovery {
    Potential qhat;
    CauchySolution y;
    KreinReport report;
};

// Dense Nystroem solve of (I/2 + C) F = (T - t, 0). Signals a
// numerical error when the discrete system is near singular.
Control solve_krein(const ConnectingKernel& K, double T, KreinDiagnostics* diag = nullptr);

// Endpoint values of the Cauchy solution read off the special control:
// y(T) = (f1(0) - f2(0)) / 2, y(-T) = -(f1(0) + f2(0)) / 2.
std::pair<double, double> extract_endpoint(const Control& F, double T);

// Full recovery sweep: nT horizons filling y on (-pi, pi), then
// q = y'' / y with a zero-guard, folded onto (0, 2 pi). ny > 0
// resamples the recovered potential onto that many nodes.
KreinRecovery recover_potential_krein(const ResponseKernel& R, int nT, int ny = 0);

} // namespace ringwave

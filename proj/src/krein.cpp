#include "ringwave/krein.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

#include "ringwave/errors.hpp"

namespace ringwave {

Control solve_krein(const ConnectingKernel& K, double T, KreinDiagnostics* diag) {
    if (std::abs(K.T - T) > 1e-9 * (T + 1.0)) {
        throw invalid_input("solve_krein: kernel was built for a different horizon");
    }
    const int n = K.grid.count;
    const double h = K.grid.h();
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n, h);
    w(0) *= 0.5;
    w(n - 1) *= 0.5;

    Eigen::MatrixXd A = 0.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n);
    A.block(0, 0, n, n) += K.C11 * w.asDiagonal();
    A.block(0, n, n, n) += K.C12 * w.asDiagonal();
    A.block(n, 0, n, n) += K.C21 * w.asDiagonal();
    A.block(n, n, n, n) += K.C22 * w.asDiagonal();

    Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * n);
    for (int i = 0; i < n; ++i) {
        b(i) = T - K.grid.node(i);
    }

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    // rcond() alone can report 1 on an exactly singular factorization,
    // so also require the pivot ratio to stay away from zero
    Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
    double ratio = piv.maxCoeff() > 0.0 ? piv.minCoeff() / piv.maxCoeff() : 0.0;
    double rc = std::min(lu.rcond(), ratio);
    double cond = rc > 0.0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
    if (!(cond < 1e12)) {
        throw numerical_error("solve_krein: discrete system is near singular");
    }
    Eigen::VectorXd x = lu.solve(b);
    double bn = b.norm();
    double res = bn > 0.0 ? (A * x - b).norm() / bn : (A * x - b).norm();
    if (diag != nullptr) {
        diag->condition = cond;
        diag->residual = res;
    }

    std::vector<double> f1(x.data(), x.data() + n);
    std::vector<double> f2(x.data() + n, x.data() + 2 * n);
    return Control(K.grid, std::move(f1), std::move(f2), std::vector<double>(n, 0.0));
}

std::pair<double, double> extract_endpoint(const Control& F, double T) {
    if (F.grid.start > 1e-9 || T <= 0.0) {
        throw invalid_input("extract_endpoint: control must be sampled from t = 0");
    }
    double f10 = F.f1.front();
    double f20 = F.f2.front();
    return {0.5 * (f10 - f20), -0.5 * (f10 + f20)};
}

KreinRecovery recover_potential_krein(const ResponseKernel& R, int nT, int ny) {
    if (nT < 32) {
        throw invalid_input("recover_potential_krein: need at least 32 horizons");
    }
    if (R.tmax() < kTwoPi - 1e-9) {
        throw invalid_input("recover_potential_krein: response must cover [0, 2 pi]");
    }

    KreinReport report;
    report.condition_numbers.resize(nT, 0.0);

    const int ncs = 2 * nT + 1;
    UniformGrid ygrid(-kPi, kPi, ncs);
    std::vector<double> yvals(ncs, 0.0);
    for (int k = 1; k <= nT; ++k) {
        double T = kPi * k / nT;
        ConnectingKernel K = build_connecting_kernel(R, T);
        KreinDiagnostics diag;
        Control F = solve_krein(K, T, &diag);
        report.condition_numbers[k - 1] = diag.condition;
        report.residual_l2 = std::max(report.residual_l2, diag.residual);
        auto [yT, ymT] = extract_endpoint(F, T);
        yvals[nT + k] = yT;
        yvals[nT - k] = ymT;
    }

    CauchySolution y{ygrid, yvals};
    GridFunction yf(ygrid, yvals);
    GridFunction ypp = differentiate(yf, 2);

    double ymax = 0.0;
    for (double v : yvals) {
        ymax = std::max(ymax, std::abs(v));
    }
    if (ymax == 0.0) {
        throw numerical_error("recover_potential_krein: Cauchy solution vanished");
    }
    double eps = 1e-2 * ymax;
    std::vector<double> qt(ncs, 0.0);
    std::vector<bool> guarded(ncs, false);
    int nguard = 0;
    for (int i = 0; i < ncs; ++i) {
        if (std::abs(yvals[i]) < eps) {
            guarded[i] = true;
            ++nguard;
        } else {
            qt[i] = ypp.values[i] / yvals[i];
        }
    }
    report.guarded_fraction = static_cast<double>(nguard) / ncs;
    if (report.guarded_fraction > 0.2) {
        throw numerical_error("recover_potential_krein: too many nodes near a zero of y");
    }

    // Guarded runs take the straight line between surviving neighbors.
    for (int i = 0; i < ncs;) {
        if (!guarded[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j < ncs && guarded[j]) {
            ++j;
        }
        int lo = i - 1;
        int hi = j;
        for (int k = i; k < j; ++k) {
            if (lo < 0 && hi >= ncs) {
                qt[k] = 0.0;
            } else if (lo < 0) {
                qt[k] = qt[hi];
            } else if (hi >= ncs) {
                qt[k] = qt[lo];
            } else {
                double a = static_cast<double>(k - lo) / (hi - lo);
                qt[k] = (1.0 - a) * qt[lo] + a * qt[hi];
            }
        }
        i = j;
    }

    // Fold: x in (0, pi) reads qt(x), x in (pi, 2 pi) reads qt(x - 2 pi).
    std::vector<double> qs(ncs, 0.0);
    for (int j = 0; j < ncs; ++j) {
        qs[j] = j <= nT ? qt[nT + j] : qt[j - nT];
    }
    Potential qhat = Potential::from_samples(qs);
    if (ny >= 2) {
        GridFunction qf(qhat.base.grid, qhat.base.values);
        UniformGrid out(0.0, kTwoPi, ny);
        std::vector<double> rv(ny, 0.0);
        for (int j = 0; j < ny; ++j) {
            rv[j] = qf.eval(out.node(j));
        }
        qhat = Potential::from_samples(rv);
    }
    return KreinRecovery{std::move(qhat), std::move(y), std::move(report)};
}

} // namespace ringwave

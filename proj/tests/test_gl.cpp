#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "ringwave/connecting.hpp"
#include "ringwave/errors.hpp"
#include "ringwave/gelfand_levitan.hpp"
#include "ringwave/krein.hpp"
#include "ringwave/potential.hpp"
#include "ringwave/response.hpp"

namespace {

using namespace ringwave;

GLKernel pipeline_kernel(const Potential& q, double h) {
    ResponseKernel R = long_time_response(q, 1, h);
    ConnectingKernel K = build_connecting_kernel(R, kPi);
    return build_gl_kernel(K);
}

GLKernel blank_kernel(int n) {
    UniformGrid g(0.0, kPi, n);
    Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
    return GLKernel{g, z, z, z, z};
}

double rel_l2_on(const Potential& qhat, double (*qtrue)(double)) {
    double num = 0.0, den = 0.0;
    const GridFunction& g = qhat.base;
    for (int i = 0; i < g.grid.count; ++i) {
        double x = g.grid.node(i);
        double d = g.values[i] - qtrue(x);
        num += d * d;
        den += qtrue(x) * qtrue(x);
    }
    return std::sqrt(num / den);
}

} // namespace

TEST_SUITE("gl") {

TEST_CASE("homogeneous equation has the zero solution") {
    GLSolution m = solve_gl(blank_kernel(33));
    CHECK(m.m11.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK(m.m12.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK(m.m21.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    CHECK(m.m22.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
    Potential qhat = recover_potential_gl(m);
    for (double v : qhat.base.values) {
        CHECK(v == doctest::Approx(0.0));
    }
}

TEST_CASE("weak data reproduces the first Neumann term") {
    int n = 65;
    GLKernel G = blank_kernel(n);
    double alpha = 1e-4;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            double t = G.grid.node(i), s = G.grid.node(j);
            G.C11(i, j) = alpha * std::cos(t) * std::cos(s);
            G.C12(i, j) = alpha * std::sin(t) * std::sin(s);
            G.C21(i, j) = alpha * std::sin(t) * std::cos(s);
            G.C22(i, j) = alpha * std::cos(2.0 * t) * std::cos(2.0 * s);
        }
    }
    GLSolution m = solve_gl(G);
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            worst = std::max(worst, std::abs(m.m11(i, j) + G.C11(i, j)));
            worst = std::max(worst, std::abs(m.m12(i, j) + G.C12(i, j)));
            worst = std::max(worst, std::abs(m.m21(i, j) + G.C21(i, j)));
            worst = std::max(worst, std::abs(m.m22(i, j) + G.C22(i, j)));
        }
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("solution is triangular in storage") {
    Potential q = Potential::from_function([](double) { return 1.0; }, 257);
    GLSolution m = solve_gl(pipeline_kernel(q, kTwoPi / 128));
    int n = m.grid.count;
    CHECK(m.m11(n / 2, n / 4) == doctest::Approx(0.0));
    CHECK(m.m22(n - 1, 0) == doctest::Approx(0.0));
}

TEST_CASE("solve residual is at direct-solver level") {
    Potential q = Potential::from_function([](double) { return 1.0; }, 257);
    GLKernel G = pipeline_kernel(q, kTwoPi / 128);
    GLSolution m = solve_gl(G);
    int n = G.grid.count;
    double h = G.grid.h();
    double worst = 0.0;
    for (int j : {n / 3, n / 2, n - 1}) {
        for (int i = 0; i <= j; ++i) {
            // residual of m + C + integral(C m) over the column
            double a11 = m.m11(i, j) + G.C11(i, j);
            double a12 = m.m12(i, j) + G.C12(i, j);
            double a21 = m.m21(i, j) + G.C21(i, j);
            double a22 = m.m22(i, j) + G.C22(i, j);
            for (int k = 0; k <= j; ++k) {
                double w = (k == 0 || k == j) ? 0.5 * h : h;
                if (j == 0) w = 0.0;
                a11 += w * (G.C11(i, k) * m.m11(k, j) + G.C12(i, k) * m.m21(k, j));
                a12 += w * (G.C11(i, k) * m.m12(k, j) + G.C12(i, k) * m.m22(k, j));
                a21 += w * (G.C21(i, k) * m.m11(k, j) + G.C22(i, k) * m.m21(k, j));
                a22 += w * (G.C21(i, k) * m.m12(k, j) + G.C22(i, k) * m.m22(k, j));
            }
            for (double r : {a11, a12, a21, a22}) {
                worst = std::max(worst, std::abs(r));
            }
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("unit potential diagonal slope") {
    Potential q = Potential::from_function([](double) { return 1.0; }, 257);
    GLSolution m = solve_gl(pipeline_kernel(q, kTwoPi / 256));
    Potential qhat = recover_potential_gl(m);
    // q/2 is the slope of m11 - m12 along the diagonal; the recovered
    // potential doubles it, so the first half should sit near 1
    const GridFunction& g = qhat.base;
    double worst = 0.0;
    for (int i = 0; i < g.grid.count; ++i) {
        double x = g.grid.node(i);
        if (x < 0.3 || x > kPi - 0.3) continue;
        worst = std::max(worst, std::abs(g.values[i] - 1.0));
    }
    CHECK(worst < 0.05);
    CHECK(rel_l2_on(qhat, +[](double) { return 1.0; }) < 0.05);
}

TEST_CASE("round trip through the sine potential and route agreement") {
    Potential q = Potential::from_function([](double x) { return std::sin(x); }, 513);
    double h = kTwoPi / 256;
    ResponseKernel R = long_time_response(q, 1, h);

    GLSolution m = solve_gl(build_gl_kernel(build_connecting_kernel(R, kPi)));
    Potential qgl = recover_potential_gl(m);
    double qnorm = std::sqrt(kPi); // L2 norm of sin over one period
    double num = 0.0;
    UniformGrid probe(0.0, kTwoPi, 257);
    for (int i = 0; i < probe.count; ++i) {
        double x = probe.node(i);
        double d = extend_periodic(qgl, x) - std::sin(x);
        num += d * d * (i == 0 || i == probe.count - 1 ? 0.5 : 1.0) * probe.h();
    }
    CHECK(std::sqrt(num) < 0.05 * qnorm);

    KreinRecovery rec = recover_potential_krein(R, 64);
    double cross = 0.0;
    for (int i = 0; i < probe.count; ++i) {
        double x = probe.node(i);
        double d = extend_periodic(qgl, x) - extend_periodic(rec.qhat, x);
        cross += d * d * (i == 0 || i == probe.count - 1 ? 0.5 : 1.0) * probe.h();
    }
    CHECK(std::sqrt(cross) < 0.05 * qnorm);
}

TEST_CASE("singular columns are reported") {
    int n = 17;
    GLKernel G = blank_kernel(n);
    double h = G.grid.h();
    for (int i = 0; i < n; ++i) {
        G.C11(i, i) = -1.0 / h;
        G.C22(i, i) = -1.0 / h;
    }
    CHECK_THROWS_AS(solve_gl(G), numerical_error);
}

} // TEST_SUITE

#include "ringwave/gelfand_levitan.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>

#include "ringwave/errors.hpp"

namespace ringwave {

GLSolution solve_gl(const GLKernel& G) {
    const int n = G.grid.count;
    const double h = G.grid.h();
    GLSolution m{G.grid, Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n),
                 Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};

    const Eigen::MatrixXd* blocks[2][2] = {{&G.C11, &G.C12}, {&G.C21, &G.C22}};
    Eigen::MatrixXd* out[2][2] = {{&m.m11, &m.m12}, {&m.m21, &m.m22}};

    for (int j = 0; j < n; ++j) {
        int dim = 2 * (j + 1);
        Eigen::MatrixXd A = Eigen::MatrixXd::Identity(dim, dim);
        for (int i = 0; i <= j; ++i) {
            for (int l = 0; l <= j; ++l) {
                double w = (l == 0 || l == j) ? 0.5 * h : h;
                if (j == 0) {
                    w = 0.0;
                }
                for (int a = 0; a < 2; ++a) {
                    for (int b = 0; b < 2; ++b) {
                        A(2 * i + a, 2 * l + b) += w * (*blocks[a][b])(i, l);
                    }
                }
            }
        }
        Eigen::MatrixXd rhs(dim, 2);
        for (int i = 0; i <= j; ++i) {
            for (int a = 0; a < 2; ++a) {
                rhs(2 * i + a, 0) = -(*blocks[a][0])(i, j);
                rhs(2 * i + a, 1) = -(*blocks[a][1])(i, j);
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
        // rcond() alone can report 1 on an exactly singular factorization,
        // so also require the pivot ratio to stay away from zero
        Eigen::VectorXd piv = lu.matrixLU().diagonal().cwiseAbs();
        double ratio = piv.maxCoeff() > 0.0 ? piv.minCoeff() / piv.maxCoeff() : 0.0;
        double rc = std::min(lu.rcond(), ratio);
        if (!(rc > 1e-12)) {
            throw numerical_error("solve_gl: near-singular column system at s = " +
                                  std::to_string(G.grid.node(j)));
        }
        Eigen::MatrixXd sol = lu.solve(rhs);
        for (int i = 0; i <= j; ++i) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    (*out[a][b])(i, j) = sol(2 * i + a, b);
                }
            }
        }
    }
    return m;
}

Potential recover_potential_gl(const GLSolution& m) {
    const int M = m.grid.count;
    std::vector<double> g1(M), g2(M);
    for (int i = 0; i < M; ++i) {
        g1[i] = m.m11(i, i) - m.m12(i, i);
        g2[i] = m.m11(i, i) + m.m12(i, i);
    }
    GridFunction d1 = differentiate(GridFunction(m.grid, g1), 1);
    GridFunction d2 = differentiate(GridFunction(m.grid, g2), 1);

    std::vector<double> q(2 * M - 1, 0.0);
    for (int i = 0; i < 2 * M - 1; ++i) {
        if (i <= M - 1) {
            q[i] = 2.0 * d1.values[i];
        } else {
            q[i] = 2.0 * d2.values[2 * (M - 1) - i];
        }
    }
    return Potential::from_samples(q);
}

} // namespace ringwave

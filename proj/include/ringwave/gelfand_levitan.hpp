#pragma once

#include "ringwave/connecting.hpp"
#include "ringwave/potential.hpp"

namespace ringwave {

// Solution kernel of the matrix Gelfand-Levitan equation on (0, pi).
// Blocks are stored densely with m(x, s) = 0 enforced for x > s.
struct GLSolution {
    UniformGrid grid; // on [0, pi]
    Eigen::MatrixXd m11, m12, m21, m22;
};

// Column-by-column dense solve of
//   m(x, s) + C(x, s) + integral_0^s C(x, a) m(a, s) da = 0.
// Signals a numerical error naming the offending s when a column
// system is near singular.
GLSolution solve_gl(const GLKernel& G);

// Potential from the diagonal of the solution kernel:
// q(x) = 2 d/dx [m11 - m12](x, x) on (0, pi), continued to (pi, 2 pi)
// through the mirrored diagonal combination m11 + m12.
Potential recover_potential_gl(const GLSolution& m);

} // namespace ringwave

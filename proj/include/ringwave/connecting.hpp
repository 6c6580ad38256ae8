#pragma once

#include <Eigen/Core>

#include "ringwave/response.hpp"

namespace ringwave {

// Kernel part of the connecting operator on controls over [0, T]:
// the operator acts as F -> F/2 + integral of C(t,s) F(s) ds.
// The diagonal blocks are symmetric in (t, s) by construction.
struct ConnectingKernel {
    double T;
    UniformGrid grid; // on [0, T], shared by rows and columns
    Eigen::MatrixXd C11, C12, C21, C22;
};

// Time-reversed, doubled kernel used by the Gelfand-Levitan route.
// Lives on the fixed horizon pi.
struct GLKernel {
    UniformGrid grid; // on [0, pi]
    Eigen::MatrixXd C11, C12, C21, C22;
};

// Assembles the connecting kernel from response data alone. Requires
// response samples on [0, 2T] and 0 < T <= pi.
ConnectingKernel build_connecting_kernel(const ResponseKernel& R, double T);

// F/2 plus the trapezoid Nystroem sum of the kernel against F.
// F must live on the kernel's grid.
Control apply_connecting(const ConnectingKernel& K, const Control& F);

// Sample-exact reversal t -> T - t on the uniform grid.
Control time_reversal(const Control& F, double T);

// Blockwise 2 C(pi - t, pi - s); the identity part of the doubled
// operator cancels, leaving a pure integral kernel.
GLKernel build_gl_kernel(const ConnectingKernel& K);

} // namespace ringwave

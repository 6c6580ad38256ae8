#pragma once

#include "ringwave/response.hpp"

namespace ringwave {

// Sampled solution u(x, t) of the driven ring problem, zero initial
// state, control fed through the boundary pair (f1, f2').
struct WaveField {
    UniformGrid xgrid; // on [0, 2 pi]
    UniformGrid tgrid; // on [0, T]
    std::vector<std::vector<double>> values; // values[it][ix]

    double at(int it, int ix) const { return values[it][ix]; }
};

// Kernel pair prepared for field evaluation. Horizon fixes how many
// whole turns the representation sums.
struct WaveKernels {
    GoursatKernel w1;
    GoursatKernel w2;
    int turns = 1;
};

WaveKernels make_wave_kernels(const Potential& q, double h, int turns = 1);

// Point value of the representation: clockwise and counterclockwise
// d'Alembert parts plus the kernel convolutions, summed over turns.
double wave_field_value(const WaveKernels& K, const Control& F, double x, double t);

// Field on an explicit grid pair.
WaveField wave_field_on(const WaveKernels& K, const Control& F, const UniformGrid& xg,
                        const UniformGrid& tg);

// One-turn field, T <= 2 pi, sampled at the potential's resolution.
WaveField wave_field(const Potential& q, const Control& F, double T);

// Multi-turn field, T <= 2 n pi.
WaveField wave_field_long(const Potential& q, const Control& F, double T, int n);

// State v(., T) on (-T, T) reached at time T <= pi: the x > 0 branch
// is the field near the left end, the x < 0 branch the field pulled
// back across x = 2 pi.
StateFunction control_to_state(const Potential& q, const Control& F, double T,
                               double h = kTwoPi / 512.0);

// Time traces of the two boundary maps read off a sampled field:
// first = (u(0) - u(2 pi), u'(0) - u'(2 pi)),
// second = (u'(0) + u'(2 pi), -u(0) - u(2 pi)) / 2.
struct BoundaryTraces {
    UniformGrid tgrid;
    std::vector<double> gamma0_1, gamma0_2;
    std::vector<double> gamma1_1, gamma1_2;
};

BoundaryTraces boundary_traces(const WaveField& u, const Control& F);

} // namespace ringwave

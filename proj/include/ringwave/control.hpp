#pragma once

#include <functional>
#include <utility>

#include "ringwave/grid.hpp"

namespace ringwave {

// Boundary control pair (f1, f2) on [0, T]. The system consumes
// (f1, f2'), so the derivative of f2 is carried along: analytic when
// supplied, finite differences otherwise. Evaluation is zero outside
// [0, T]; the system starts from rest, so negative-time arguments read
// as zero.
struct Control {
    UniformGrid grid;
    std::vector<double> f1;
    std::vector<double> f2;
    std::vector<double> f2p;

    Control() = default;
    Control(UniformGrid g, std::vector<double> a, std::vector<double> b);
    Control(UniformGrid g, std::vector<double> a, std::vector<double> b,
            std::vector<double> bprime);

    static Control from_functions(const std::function<double(double)>& a,
                                  const std::function<double(double)>& b, double T,
                                  int count);

    double horizon() const { return grid.end; }
    double f1_at(double t) const;
    double f2_at(double t) const;
    double f2p_at(double t) const;

    // Inner product of the outer space: integral of f1*g1 + f2*g2.
    static double inner(const Control& F, const Control& G);
    static double norm(const Control& F);
};

// Element of the inner space L2(-T, T): the state v(., T) reached by a
// control, sampled at cell centers so the possible jump across x = 0
// lies between samples. The paired view splits it into the two
// half-line traces.
struct StateFunction {
    UniformGrid grid; // cell centers of [-T, T]
    std::vector<double> values;

    StateFunction() = default;
    StateFunction(UniformGrid g, std::vector<double> v);

    double eval(double x) const;
    // (a1, a2)(x) = (value at x, value at -x) for x in (0, T).
    std::pair<double, double> pair_view(double x) const;

    static double inner(const StateFunction& a, const StateFunction& b);
    static double norm(const StateFunction& a);
};

} // namespace ringwave

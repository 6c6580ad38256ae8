#pragma once

#include <functional>

#include "ringwave/grid.hpp"

namespace ringwave {

// Sampled potential q on [0, 2*pi]. The ring problem continues q
// periodically; the auxiliary line problem uses the compactly
// supported extension that vanishes for |x| >= 2*pi.
struct Potential {
    GridFunction base;

    Potential() : base(UniformGrid(0.0, kTwoPi, 2), {0.0, 0.0}) {}
    explicit Potential(GridFunction samples);

    static Potential from_samples(std::vector<double> values);
    static Potential from_function(const std::function<double(double)>& f, int count);

    double mean() const;
};

// q continued 2*pi periodically to the whole line.
double extend_periodic(const Potential& q, double x);

// q on (0, 2*pi), q(x + 2*pi) on (-2*pi, 0), zero for |x| >= 2*pi.
double extend_compact(const Potential& q, double x);

enum class PotentialMode { periodic, compact };

double extend(const Potential& q, double x, PotentialMode mode);

} // namespace ringwave

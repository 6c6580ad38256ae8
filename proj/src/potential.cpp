#include "ringwave/potential.hpp"

#include <cmath>
#include <utility>

namespace ringwave {

Potential::Potential(GridFunction samples) : base(std::move(samples)) {
    if (std::abs(base.grid.start) > 1e-9 || std::abs(base.grid.end - kTwoPi) > 1e-9)
        throw invalid_input("potential samples must span [0, 2*pi]");
}

Potential Potential::from_samples(std::vector<double> values) {
    int n = static_cast<int>(values.size());
    return Potential(GridFunction(UniformGrid(0.0, kTwoPi, n), std::move(values)));
}

Potential Potential::from_function(const std::function<double(double)>& f, int count) {
    UniformGrid g(0.0, kTwoPi, count);
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = f(g.node(i));
    return Potential(GridFunction(g, std::move(v)));
}

double Potential::mean() const { return integrate(base) / kTwoPi; }

double extend_periodic(const Potential& q, double x) {
    double y = std::fmod(x, kTwoPi);
    if (y < 0.0) y += kTwoPi;
    return q.base.eval(y);
}

double extend_compact(const Potential& q, double x) {
    if (x <= -kTwoPi || x >= kTwoPi) return 0.0;
    if (x < 0.0) return q.base.eval(x + kTwoPi);
    return q.base.eval(x);
}

double extend(const Potential& q, double x, PotentialMode mode) {
    return mode == PotentialMode::periodic ? extend_periodic(q, x) : extend_compact(q, x);
}

} // namespace ringwave

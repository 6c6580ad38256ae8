#include "ringwave/control.hpp"

#include <cmath>
#include <utility>

namespace ringwave {

namespace {

double eval_zero_outside(const UniformGrid& g, const std::vector<double>& v, double t) {
    const double h = g.h();
    double s = (t - g.start) / h;
    if (s < 0.0 || s > g.count - 1) return 0.0;
    int i = static_cast<int>(s);
    if (i >= g.count - 1) return v.back();
    double w = s - i;
    return (1.0 - w) * v[i] + w * v[i + 1];
}

} // namespace

Control::Control(UniformGrid g, std::vector<double> a, std::vector<double> b)
    : grid(g), f1(std::move(a)), f2(std::move(b)) {
    if (static_cast<int>(f1.size()) != grid.count || static_cast<int>(f2.size()) != grid.count)
        throw invalid_input("control samples must match the grid");
    f2p = differentiate(GridFunction(grid, f2), 1).values;
}

Control::Control(UniformGrid g, std::vector<double> a, std::vector<double> b,
                 std::vector<double> bprime)
    : grid(g), f1(std::move(a)), f2(std::move(b)), f2p(std::move(bprime)) {
    if (static_cast<int>(f1.size()) != grid.count || static_cast<int>(f2.size()) != grid.count ||
        static_cast<int>(f2p.size()) != grid.count)
        throw invalid_input("control samples must match the grid");
}

Control Control::from_functions(const std::function<double(double)>& a,
                                const std::function<double(double)>& b, double T, int count) {
    UniformGrid g(0.0, T, count);
    std::vector<double> va(count), vb(count);
    for (int i = 0; i < count; ++i) {
        va[i] = a(g.node(i));
        vb[i] = b(g.node(i));
    }
    return Control(g, std::move(va), std::move(vb));
}

double Control::f1_at(double t) const { return eval_zero_outside(grid, f1, t); }
double Control::f2_at(double t) const { return eval_zero_outside(grid, f2, t); }
double Control::f2p_at(double t) const { return eval_zero_outside(grid, f2p, t); }

double Control::inner(const Control& F, const Control& G) {
    return l2_inner(GridFunction(F.grid, F.f1), GridFunction(G.grid, G.f1)) +
           l2_inner(GridFunction(F.grid, F.f2), GridFunction(G.grid, G.f2));
}

double Control::norm(const Control& F) { return std::sqrt(std::max(0.0, inner(F, F))); }

StateFunction::StateFunction(UniformGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.count)
        throw invalid_input("state samples must match the grid");
}

double StateFunction::eval(double x) const { return GridFunction(grid, values).eval(x); }

std::pair<double, double> StateFunction::pair_view(double x) const {
    return {eval(x), eval(-x)};
}

double StateFunction::inner(const StateFunction& a, const StateFunction& b) {
    if (!a.grid.same_as(b.grid, 1e-9))
        throw invalid_input("state inner product needs matching grids");
    // midpoint rule: samples sit at cell centers, so a jump across
    // x = 0 falls on a cell boundary and costs no accuracy
    double acc = 0.0;
    for (int i = 0; i < a.grid.count; ++i) acc += a.values[i] * b.values[i];
    return acc * a.grid.h();
}

double StateFunction::norm(const StateFunction& a) {
    return std::sqrt(std::max(0.0, inner(a, a)));
}

} // namespace ringwave

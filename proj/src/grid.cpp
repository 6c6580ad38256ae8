#include "ringwave/grid.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace ringwave {

UniformGrid::UniformGrid(double a, double b, int n) : start(a), end(b), count(n) {
    if (n < 2) throw invalid_input("grid needs at least two nodes");
    if (!(b > a)) throw invalid_input("grid span must be positive");
}

bool UniformGrid::same_as(const UniformGrid& other, double tol) const {
    return count == other.count && std::abs(start - other.start) <= tol &&
           std::abs(end - other.end) <= tol;
}

GridFunction::GridFunction(UniformGrid g, std::vector<double> v)
    : grid(g), values(std::move(v)) {
    if (static_cast<int>(values.size()) != grid.count)
        throw invalid_input("value count does not match grid");
}

double GridFunction::eval(double x) const {
    const double h = grid.h();
    double s = (x - grid.start) / h;
    if (s <= 0.0) return values.front();
    if (s >= grid.count - 1) return values.back();
    int i = static_cast<int>(s);
    if (i >= grid.count - 1) i = grid.count - 2;
    double w = s - i;
    return (1.0 - w) * values[i] + w * values[i + 1];
}

double integrate(const GridFunction& f) {
    const int n = f.grid.count;
    double acc = 0.5 * (f.values[0] + f.values[n - 1]);
    for (int i = 1; i < n - 1; ++i) acc += f.values[i];
    return acc * f.grid.h();
}

double integrate_simpson(const GridFunction& f) {
    const int n = f.grid.count;
    if (n % 2 == 0) throw invalid_input("Simpson rule needs an odd node count");
    double acc = f.values[0] + f.values[n - 1];
    for (int i = 1; i < n - 1; ++i) acc += f.values[i] * (i % 2 ? 4.0 : 2.0);
    return acc * f.grid.h() / 3.0;
}

GridFunction cumulative_integral(const GridFunction& f) {
    const int n = f.grid.count;
    const double h = f.grid.h();
    std::vector<double> out(n, 0.0);
    for (int i = 1; i < n; ++i)
        out[i] = out[i - 1] + 0.5 * h * (f.values[i - 1] + f.values[i]);
    return GridFunction(f.grid, std::move(out));
}

GridFunction differentiate(const GridFunction& f, int order) {
    const int n = f.grid.count;
    if (n < 5) throw invalid_input("differentiate needs at least five nodes");
    if (order != 1 && order != 2) throw invalid_input("derivative order must be 1 or 2");
    const double h = f.grid.h();
    const std::vector<double>& v = f.values;
    std::vector<double> out(n);
    if (order == 1) {
        out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        for (int i = 1; i < n - 1; ++i) out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
        out[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    } else {
        const double h2 = h * h;
        out[0] = (35.0 * v[0] - 104.0 * v[1] + 114.0 * v[2] - 56.0 * v[3] + 11.0 * v[4]) /
                 (12.0 * h2);
        for (int i = 1; i < n - 1; ++i) out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) / h2;
        out[n - 1] = (35.0 * v[n - 1] - 104.0 * v[n - 2] + 114.0 * v[n - 3] -
                      56.0 * v[n - 4] + 11.0 * v[n - 5]) /
                     (12.0 * h2);
    }
    return GridFunction(f.grid, std::move(out));
}

double l2_inner(const GridFunction& f, const GridFunction& g) {
    if (!f.grid.same_as(g.grid, 1e-9)) throw invalid_input("inner product needs a shared grid");
    const int n = f.grid.count;
    std::vector<double> prod(n);
    for (int i = 0; i < n; ++i) prod[i] = f.values[i] * g.values[i];
    return integrate(GridFunction(f.grid, std::move(prod)));
}

double l2_norm(const GridFunction& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }

} // namespace ringwave

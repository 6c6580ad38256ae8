#include "ringwave/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <type_traits>
#include <utility>

#include "ringwave/errors.hpp"

namespace ringwave {

namespace {

// Integration tiers: a coarse scan locates structure, refinement and
// every public evaluation run at the fine tier. Step counts are kept
// multiples of the potential's cell count so sample kinks land on
// nodes, preserving fourth-order accuracy.
struct Tier {
    double c;        // target phase advance per step
    int floor_steps;
};
constexpr Tier kScanTier{0.05, 512};
constexpr Tier kFineTier{0.01, 2048};

int steps_for(const Tier& tier, double lambda, int cells) {
    double om = std::sqrt(std::max(1.0, std::abs(lambda)));
    double want = kTwoPi * om / tier.c;
    int base = std::max(tier.floor_steps, static_cast<int>(std::ceil(want)));
    int m = ((base + cells - 1) / cells) * cells;
    if (m % 2 != 0) {
        m *= 2;
    }
    return m;
}

// Potential samples shared by every Runge-Kutta stage of one step count.
struct QTable {
    int n = 0;
    double h = 0.0;
    std::vector<double> node, mid;
};

QTable tabulate(const Potential& q, int n) {
    QTable t;
    t.n = n;
    t.h = kTwoPi / n;
    t.node.resize(n + 1);
    t.mid.resize(n);
    for (int i = 0; i <= n; ++i) {
        t.node[i] = q.base.eval(t.h * i);
    }
    for (int i = 0; i < n; ++i) {
        t.mid[i] = q.base.eval(t.h * (i + 0.5));
    }
    return t;
}

template <typename S>
struct PairEnd {
    S phi, phip, theta, thetap;
    double wdrift;
};

template <typename S>
PairEnd<S> integrate_pair(const QTable& t, S lambda, std::vector<double>* phi_out,
                          std::vector<double>* theta_out) {
    const int n = t.n;
    const double h = t.h;
    S phi = S(0), phip = S(1), theta = S(1), thetap = S(0);
    double wdrift = 0.0;
    if (phi_out != nullptr) {
        phi_out->assign(n + 1, 0.0);
    }
    if (theta_out != nullptr) {
        theta_out->assign(n + 1, 0.0);
    }
    auto record = [&](int i) {
        if constexpr (std::is_same_v<S, double>) {
            if (phi_out != nullptr) {
                (*phi_out)[i] = phi;
            }
            if (theta_out != nullptr) {
                (*theta_out)[i] = theta;
            }
        }
    };
    record(0);
    for (int i = 0; i < n; ++i) {
        S a0 = S(t.node[i]) - lambda;
        S am = S(t.mid[i]) - lambda;
        S a1 = S(t.node[i + 1]) - lambda;
        auto advance = [&](S y, S yp) {
            S k1y = yp, k1p = a0 * y;
            S y2 = y + 0.5 * h * k1y, p2 = yp + 0.5 * h * k1p;
            S k2y = p2, k2p = am * y2;
            S y3 = y + 0.5 * h * k2y, p3 = yp + 0.5 * h * k2p;
            S k3y = p3, k3p = am * y3;
            S y4 = y + h * k3y, p4 = yp + h * k3p;
            S k4y = p4, k4p = a1 * y4;
            return std::pair<S, S>(y + h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y),
                                   yp + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p));
        };
        auto [nph, nphp] = advance(phi, phip);
        auto [nth, nthp] = advance(theta, thetap);
        phi = nph;
        phip = nphp;
        theta = nth;
        thetap = nthp;
        record(i + 1);
        if ((i & 31) == 31 || i == n - 1) {
            wdrift = std::max(wdrift, std::abs(theta * phip - thetap * phi - S(1)));
        }
    }
    return {phi, phip, theta, thetap, wdrift};
}

} // namespace

FundamentalPair fundamental_pair(const Potential& q, double lambda, bool with_profile) {
    int cells = q.base.grid.count - 1;
    int n = steps_for(kFineTier, lambda, cells);
    QTable t = tabulate(q, n);
    std::vector<double> phi, theta;
    auto e = integrate_pair<double>(t, lambda, with_profile ? &phi : nullptr,
                                    with_profile ? &theta : nullptr);
    FundamentalPair out;
    out.lambda = lambda;
    out.phi_end = e.phi;
    out.phi_prime_end = e.phip;
    out.theta_end = e.theta;
    out.theta_prime_end = e.thetap;
    out.wronskian_drift = e.wdrift;
    if (with_profile) {
        out.xs.resize(n + 1);
        for (int i = 0; i <= n; ++i) {
            out.xs[i] = t.h * i;
        }
        out.phi = std::move(phi);
        out.theta = std::move(theta);
    }
    return out;
}

double discriminant(const Potential& q, double lambda) {
    int cells = q.base.grid.count - 1;
    QTable t = tabulate(q, steps_for(kFineTier, lambda, cells));
    auto e = integrate_pair<double>(t, lambda, nullptr, nullptr);
    return e.phip + e.theta;
}

namespace {

struct RootRec {
    double lambda;
    int mult;
};

// Detector workspace: caches potential tables per step count and
// provides locked-step evaluations so local root analysis sees a
// smooth function of lambda.
class Shooter {
public:
    Shooter(const Potential& q) : q_(q), cells_(q.base.grid.count - 1) {}

    int steps(const Tier& tier, double lambda) const { return steps_for(tier, lambda, cells_); }

    const QTable& table(int n) {
        auto it = cache_.find(n);
        if (it == cache_.end()) {
            if (cache_.size() > 12) {
                cache_.clear();
            }
            it = cache_.emplace(n, tabulate(q_, n)).first;
        }
        return it->second;
    }

    PairEnd<double> ends(int n, double lambda) {
        return integrate_pair<double>(table(n), lambda, nullptr, nullptr);
    }

    double gap_fn(int n, double lambda) { // discriminant minus 2
        auto e = ends(n, lambda);
        return e.phip + e.theta - 2.0;
    }

private:
    const Potential& q_;
    int cells_;
    std::map<int, QTable> cache_;
};

double bisect_to(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                 double width) {
    while (b - a > width) {
        double m = 0.5 * (a + b);
        double fm = f(m);
        if (fm == 0.0) {
            return m;
        }
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    (void)fb;
    return 0.5 * (a + b);
}

double secant_polish(const std::function<double(double)>& f, double x0, double x1) {
    double f0 = f(x0), f1 = f(x1);
    for (int it = 0; it < 12; ++it) {
        if (f1 == f0) {
            break;
        }
        double x2 = x1 - f1 * (x1 - x0) / (f1 - f0);
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
        if (std::abs(x1 - x0) < 1e-13 * (1.0 + std::abs(x1))) {
            break;
        }
    }
    return x1;
}

// Resolves the structure inside one spectral-gap neighborhood: either a
// well-separated pair of simple eigenvalues, a (numerically) double
// eigenvalue, or nothing. The interval must contain at most one gap.
std::vector<RootRec> analyze_bump(Shooter& sh, double a, double b) {
    int n = sh.steps(kFineTier, std::max(std::abs(a), std::abs(b)));
    auto g = [&](double x) { return sh.gap_fn(n, x); };

    // golden-section maximization, then Newton on the derivative
    const double gr = 0.6180339887498949;
    double lo = a, hi = b;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = g(x1), f2 = g(x2);
    while (hi - lo > 1e-3) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = g(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = g(x1);
        }
    }
    double lc = 0.5 * (lo + hi);
    const double del = 5e-4;
    double gpp = -1.0;
    for (int it = 0; it < 4; ++it) {
        double gp = (g(lc + del) - g(lc - del)) / (2.0 * del);
        gpp = (g(lc + del) - 2.0 * g(lc) + g(lc - del)) / (del * del);
        if (!(gpp < 0.0)) {
            break;
        }
        double step = gp / gpp;
        lc -= step;
        if (std::abs(step) < 1e-10) {
            break;
        }
    }
    double gstar = g(lc);

    std::vector<RootRec> out;
    if (gstar > 1e-10) {
        // two simple roots straddling the bump
        double d0 = gpp < -1e-12 ? std::sqrt(-2.0 * gstar / gpp) : 0.05;
        for (int side = -1; side <= 1; side += 2) {
            double inner = lc, finner = gstar;
            double outer = lc + side * 1.5 * d0;
            double fouter = g(outer);
            int guard = 0;
            while (fouter > 0.0 && guard++ < 30) {
                outer += side * 1.5 * d0;
                fouter = g(outer);
            }
            if (fouter > 0.0) {
                continue;
            }
            double ra = std::min(inner, outer), rb = std::max(inner, outer);
            double fa = inner < outer ? finner : fouter;
            double fb = inner < outer ? fouter : finner;
            double mid = bisect_to(g, ra, rb, fa, fb, 1e-5);
            out.push_back({secant_polish(g, mid, mid + side * 1e-6), 1});
        }
        if (out.size() == 2 && out[0].lambda > out[1].lambda) {
            std::swap(out[0], out[1]);
        }
        if (out.size() != 2) {
            out.clear();
            out.push_back({lc, 2});
        }
    } else if (gstar > -1e-7) {
        // double eigenvalue; the phi endpoint crosses zero transversally
        // there, giving a far better-conditioned refinement target
        auto phiend = [&](double x) { return sh.ends(n, x).phi; };
        double lroot = lc;
        double pa = phiend(lc - 0.02), pb = phiend(lc + 0.02);
        if ((pa < 0.0) != (pb < 0.0)) {
            double mid = bisect_to(phiend, lc - 0.02, lc + 0.02, pa, pb, 1e-5);
            lroot = secant_polish(phiend, mid, mid + 1e-6);
        } else {
            auto thetapend = [&](double x) { return sh.ends(n, x).thetap; };
            double ta = thetapend(lc - 0.02), tb = thetapend(lc + 0.02);
            if ((ta < 0.0) != (tb < 0.0)) {
                double mid = bisect_to(thetapend, lc - 0.02, lc + 0.02, ta, tb, 1e-5);
                lroot = secant_polish(thetapend, mid, mid + 1e-6);
            }
        }
        out.push_back({lroot, 2});
    }
    return out;
}

double refine_crossing(Shooter& sh, double a, double b) {
    int n = sh.steps(kFineTier, std::max(std::abs(a), std::abs(b)));
    auto g = [&](double x) { return sh.gap_fn(n, x); };
    double fa = g(a), fb = g(b);
    if ((fa < 0.0) == (fb < 0.0)) {
        a -= 0.05;
        b += 0.05;
        fa = g(a);
        fb = g(b);
        if ((fa < 0.0) == (fb < 0.0)) {
            return 0.5 * (a + b);
        }
    }
    double mid = bisect_to(g, a, b, fa, fb, 1e-5);
    return secant_polish(g, mid, mid + 1e-6);
}

GridFunction resample_profile(const QTable& t, const std::vector<double>& y) {
    int keep = std::min(t.n + 1, 4097);
    UniformGrid g(0.0, kTwoPi, keep);
    if (keep == t.n + 1) {
        return GridFunction(g, y);
    }
    std::vector<double> v(keep, 0.0);
    for (int i = 0; i < keep; ++i) {
        double pos = g.node(i) / t.h;
        int j = std::min(static_cast<int>(pos), t.n - 1);
        double fr = pos - j;
        v[i] = (1.0 - fr) * y[j] + fr * y[j + 1];
    }
    return GridFunction(g, v);
}

double simpson_inner(const QTable& t, const std::vector<double>& u, const std::vector<double>& v) {
    double s4 = 0.0, s2 = 0.0;
    for (int i = 1; i < t.n; ++i) {
        if (i % 2 == 1) {
            s4 += u[i] * v[i];
        } else {
            s2 += u[i] * v[i];
        }
    }
    return t.h / 3.0 * (u[0] * v[0] + u[t.n] * v[t.n] + 4.0 * s4 + 2.0 * s2);
}

} // namespace

SpectralData periodic_spectrum(const Potential& q, double lambda_max) {
    Shooter sh(q);
    double qbar = q.mean();
    double amp = 0.0, qmin = q.base.values.front();
    for (double v : q.base.values) {
        amp = std::max(amp, std::abs(v - qbar));
        qmin = std::min(qmin, v);
    }
    double lo = qmin - 1.0;
    if (lambda_max <= lo) {
        throw invalid_input("periodic_spectrum: lambda_max is below the scan start");
    }

    // Eigenvalue pair 2n-1, 2n lies within amp of n^2 + mean(q); beyond
    // the fully scanned range each pair gets its own bracket window.
    // window half-width: localization radius plus the largest apparent
    // root shift of the fine integration tier near lambda_max
    double base_end = qbar + 26.0 + 3.0 * amp;
    double halfw = 4.0 + amp + 2.0e-8 * std::pow(std::abs(lambda_max) + 1.0, 1.5);
    int n_start = 1;
    while (true) {
        double c = static_cast<double>(n_start) * n_start + qbar;
        if (c - halfw > base_end && 2.0 * n_start + 1.0 > 2.0 * halfw + 1.0) {
            break;
        }
        ++n_start;
    }
    base_end = std::max(base_end, static_cast<double>(n_start) * n_start + qbar - halfw);

    std::vector<RootRec> roots;

    // full scan of the low range
    double top = std::min(lambda_max, base_end);
    if (top > lo) {
        const double step = 0.05;
        int m = static_cast<int>(std::ceil((top - lo) / step)) + 1;
        std::vector<double> xs(m), gs(m);
        for (int i = 0; i < m; ++i) {
            xs[i] = std::min(lo + i * step, top);
            gs[i] = sh.gap_fn(sh.steps(kScanTier, xs[i]), xs[i]);
        }
        std::vector<bool> used(m, false);
        for (int i = 1; i + 1 < m; ++i) {
            // tangency straddling a node: a tiny positive sample between
            // two sign changes is one gap bump, not two crossings
            if (!used[i] && gs[i] > 0.0 && gs[i] < 1e-6 && gs[i - 1] < 0.0 && gs[i + 1] < 0.0) {
                auto found = analyze_bump(sh, xs[i - 1], xs[i + 1]);
                roots.insert(roots.end(), found.begin(), found.end());
                used[i - 1] = used[i] = used[i + 1] = true;
            }
        }
        for (int i = 0; i + 1 < m; ++i) {
            if (!used[i] && !used[i + 1] && (gs[i] < 0.0) != (gs[i + 1] < 0.0)) {
                roots.push_back({refine_crossing(sh, xs[i], xs[i + 1]), 1});
            }
        }
        for (int i = 1; i + 1 < m; ++i) {
            if (used[i - 1] || used[i] || used[i + 1]) {
                continue;
            }
            bool localmax = gs[i] > -1.0 && gs[i - 1] < gs[i] && gs[i] >= gs[i + 1];
            bool nosign = (gs[i - 1] < 0.0) == (gs[i] < 0.0) && (gs[i] < 0.0) == (gs[i + 1] < 0.0);
            if (localmax && nosign) {
                auto found = analyze_bump(sh, xs[i - 1], xs[i + 1]);
                roots.insert(roots.end(), found.begin(), found.end());
            }
        }
    }

    // one window per remaining pair
    for (int n = n_start;; ++n) {
        double c = static_cast<double>(n) * n + qbar;
        if (c - halfw > lambda_max) {
            break;
        }
        auto found = analyze_bump(sh, c - halfw, c + halfw);
        roots.insert(roots.end(), found.begin(), found.end());
    }

    std::sort(roots.begin(), roots.end(),
              [](const RootRec& a, const RootRec& b) { return a.lambda < b.lambda; });
    std::vector<RootRec> uniq;
    for (const RootRec& r : roots) {
        if (r.lambda > lambda_max + 1e-9 || r.lambda < lo) {
            continue;
        }
        if (!uniq.empty() && std::abs(r.lambda - uniq.back().lambda) < 1e-7) {
            uniq.back().mult = std::max(uniq.back().mult, r.mult);
        } else {
            uniq.push_back(r);
        }
    }

    SpectralData S;
    for (const RootRec& r : uniq) {
        int n = sh.steps(kFineTier, r.lambda);
        const QTable& t = sh.table(n);
        std::vector<double> phi, theta;
        auto e = integrate_pair<double>(t, r.lambda, &phi, &theta);

        auto push_branch = [&](double c_theta, double c_phi, int mult) {
            // y = c_theta * theta + c_phi * phi, then normalize
            std::vector<double> y(t.n + 1);
            for (int i = 0; i <= t.n; ++i) {
                y[i] = c_theta * theta[i] + c_phi * phi[i];
            }
            double nrm = std::sqrt(simpson_inner(t, y, y));
            if (nrm == 0.0) {
                return;
            }
            double beta = c_phi / nrm;
            double gamma = -c_theta / nrm;
            double lead = std::abs(beta) >= std::abs(gamma) ? beta : gamma;
            double sgn = lead < 0.0 ? -1.0 : 1.0;
            for (double& v : y) {
                v *= sgn / nrm;
            }
            EigenBranch b;
            b.lambda = r.lambda;
            b.multiplicity = mult;
            b.beta = sgn * beta;
            b.gamma = sgn * gamma;
            b.profile = resample_profile(t, y);
            S.branches.push_back(std::move(b));
        };

        if (r.mult == 1) {
            double n1 = std::hypot(e.phi, 1.0 - e.theta);
            double n2 = std::hypot(1.0 - e.phip, e.thetap);
            double v0, v1; // (y(0), y'(0)), a null direction of monodromy - I
            if (n1 >= n2 && n1 > 0.0) {
                v0 = e.phi;
                v1 = 1.0 - e.theta;
            } else if (n2 > 0.0) {
                v0 = 1.0 - e.phip;
                v1 = e.thetap;
            } else {
                v0 = 0.0;
                v1 = 1.0;
            }
            push_branch(v0, v1, 1);
        } else {
            double pp = simpson_inner(t, phi, phi);
            double tp = simpson_inner(t, theta, phi);
            push_branch(0.0, 1.0, 2); // phi direction
            // theta orthogonalized against phi
            push_branch(1.0, -tp / pp, 2);
        }
    }

    int total = static_cast<int>(S.branches.size());
    if (lambda_max > qbar) {
        int expected = 1 + 2 * static_cast<int>(std::floor(std::sqrt(lambda_max - qbar)));
        if (total != expected) {
            S.warnings.push_back("eigenvalue count " + std::to_string(total) +
                                 " differs from the plain-frequency estimate " +
                                 std::to_string(expected));
        }
    }
    for (size_t i = 1; i < uniq.size(); ++i) {
        double gap = uniq[i].lambda - uniq[i - 1].lambda;
        if (gap > 0.0 && gap < 0.05) {
            S.warnings.push_back("adjacent eigenvalues near " + std::to_string(uniq[i].lambda) +
                                 " are closer than the scan step");
        }
    }
    return S;
}

Eigen::Matrix2d spectral_measure(const SpectralData& S, double lambda) {
    Eigen::Matrix2d m = Eigen::Matrix2d::Zero();
    for (const EigenBranch& b : S.branches) {
        if (b.lambda < lambda) {
            m(0, 0) += b.beta * b.beta;
            m(0, 1) += b.beta * b.gamma;
            m(1, 0) += b.beta * b.gamma;
            m(1, 1) += b.gamma * b.gamma;
        }
    }
    return m;
}

namespace {

// Exact one-cell propagation of c'' + lambda c = g with linear g,
// stable across lambda of either sign and lambda -> 0.
struct OscCell {
    double lambda, C, S, I0, I1;
};

OscCell osc_cell(double lambda, double h) {
    OscCell o;
    o.lambda = lambda;
    double x = lambda * h * h;
    if (std::abs(x) < 1e-6) {
        o.C = 1.0 - x / 2.0 + x * x / 24.0;
        o.S = h * (1.0 - x / 6.0 + x * x / 120.0);
        o.I0 = h * h * (0.5 - x / 24.0 + x * x / 720.0);
        o.I1 = h * h * h * (1.0 / 6.0 - x / 120.0 + x * x / 5040.0);
    } else if (lambda > 0.0) {
        double w = std::sqrt(lambda);
        o.C = std::cos(w * h);
        o.S = std::sin(w * h) / w;
        o.I0 = (1.0 - o.C) / lambda;
        o.I1 = (h - o.S) / lambda;
    } else {
        double v = std::sqrt(-lambda);
        o.C = std::cosh(v * h);
        o.S = std::sinh(v * h) / v;
        o.I0 = (1.0 - o.C) / lambda;
        o.I1 = (h - o.S) / lambda;
    }
    return o;
}

void osc_step(const OscCell& o, double h, double g0, double g1, double& c, double& d) {
    double slope = h > 0.0 ? (g1 - g0) / h : 0.0;
    double nc = o.C * c + o.S * d + g0 * o.I0 + slope * o.I1;
    double nd = -o.lambda * o.S * c + o.C * d + g0 * o.S + slope * o.I0;
    c = nc;
    d = nd;
}

// March c'' + lambda c = f1 beta + f2' gamma across the control grid,
// returning c and c' at every node.
void branch_coefficients(const EigenBranch& b, const Control& F, std::vector<double>& c,
                         std::vector<double>& d) {
    int n = F.grid.count;
    double h = F.grid.h();
    OscCell o = osc_cell(b.lambda, h);
    c.assign(n, 0.0);
    d.assign(n, 0.0);
    double cc = 0.0, dd = 0.0;
    for (int j = 1; j < n; ++j) {
        double g0 = F.f1[j - 1] * b.beta + F.f2p[j - 1] * b.gamma;
        double g1 = F.f1[j] * b.beta + F.f2p[j] * b.gamma;
        osc_step(o, h, g0, g1, cc, dd);
        c[j] = cc;
        d[j] = dd;
    }
}

double coeff_at(const EigenBranch& b, const Control& F, const std::vector<double>& c,
                const std::vector<double>& d, double t) {
    if (t <= 0.0) {
        return 0.0;
    }
    double h = F.grid.h();
    double end = F.grid.end - F.grid.start;
    double tt = std::min(t, end);
    int jf = std::min(static_cast<int>(std::floor(tt / h + 1e-12)), F.grid.count - 1);
    double cc = c[jf], dd = d[jf];
    double rest = tt - jf * h;
    if (rest > 1e-13) {
        double g0 = F.f1[jf] * b.beta + F.f2p[jf] * b.gamma;
        double g1 = F.f1_at(F.grid.start + tt) * b.beta + F.f2p_at(F.grid.start + tt) * b.gamma;
        OscCell o = osc_cell(b.lambda, rest);
        osc_step(o, rest, g0, g1, cc, dd);
    }
    if (t > end + 1e-13) {
        OscCell o = osc_cell(b.lambda, t - end);
        osc_step(o, t - end, 0.0, 0.0, cc, dd);
    }
    return cc;
}

int branch_limit(const SpectralData& S, int nterms) {
    int n = static_cast<int>(S.branches.size());
    return nterms > 0 ? std::min(nterms, n) : n;
}

} // namespace

double spectral_wave_field(const SpectralData& S, const Control& F, double x, double t,
                           int nterms) {
    int kmax = branch_limit(S, nterms);
    double u = 0.0;
    std::vector<double> c, d;
    for (int k = 0; k < kmax; ++k) {
        const EigenBranch& b = S.branches[k];
        branch_coefficients(b, F, c, d);
        u += coeff_at(b, F, c, d, t) * b.profile.eval(x);
    }
    return u;
}

WaveField spectral_wave_field_grid(const SpectralData& S, const Control& F, const UniformGrid& xg,
                                   const UniformGrid& tg, int nterms) {
    int kmax = branch_limit(S, nterms);
    std::vector<std::vector<double>> vals(tg.count, std::vector<double>(xg.count, 0.0));
    std::vector<double> c, d, ck(tg.count), pv(xg.count);
    for (int k = 0; k < kmax; ++k) {
        const EigenBranch& b = S.branches[k];
        branch_coefficients(b, F, c, d);
        for (int it = 0; it < tg.count; ++it) {
            ck[it] = coeff_at(b, F, c, d, tg.node(it));
        }
        for (int ix = 0; ix < xg.count; ++ix) {
            pv[ix] = b.profile.eval(xg.node(ix));
        }
        for (int it = 0; it < tg.count; ++it) {
            if (ck[it] == 0.0) {
                continue;
            }
            for (int ix = 0; ix < xg.count; ++ix) {
                vals[it][ix] += ck[it] * pv[ix];
            }
        }
    }
    return WaveField{xg, tg, std::move(vals)};
}

std::pair<double, double> spectral_response(const SpectralData& S, const Control& F, double t,
                                            int nterms) {
    int kmax = branch_limit(S, nterms);
    double r1 = 0.0, r2 = 0.0;
    std::vector<double> c, d;
    for (int k = 0; k < kmax; ++k) {
        const EigenBranch& b = S.branches[k];
        branch_coefficients(b, F, c, d);
        double ck = coeff_at(b, F, c, d, t);
        r1 += ck * b.beta;
        r2 += ck * b.gamma;
    }
    return {r1, r2};
}

namespace {

template <typename S>
Eigen::Matrix<S, 2, 2> weyl_impl(const Potential& q, S lambda) {
    int cells = q.base.grid.count - 1;
    int n = steps_for(kFineTier, std::abs(lambda), cells);
    QTable t = tabulate(q, n);
    auto e = integrate_pair<S>(t, lambda, nullptr, nullptr);
    S delta = e.phip + e.theta;
    if (std::abs(delta - S(2)) < 1e-6) {
        throw numerical_error("weyl_matrix: pole, lambda is a periodic eigenvalue");
    }
    Eigen::Matrix<S, 2, 2> g0, g1;
    g0 << -e.phi, S(1) - e.theta, S(1) - e.phip, -e.thetap;
    g1 << 0.5 * (S(1) + e.phip), 0.5 * e.thetap, -0.5 * e.phi, -0.5 * (S(1) + e.theta);
    return g1 * g0.inverse();
}

template <typename S>
Eigen::Matrix<S, 2, 2> weyl_closed_impl(const Potential& q, S lambda) {
    int cells = q.base.grid.count - 1;
    int n = steps_for(kFineTier, std::abs(lambda), cells);
    QTable t = tabulate(q, n);
    auto e = integrate_pair<S>(t, lambda, nullptr, nullptr);
    S delta = e.phip + e.theta;
    if (std::abs(delta - S(2)) < 1e-6) {
        throw numerical_error("weyl_matrix: pole, lambda is a periodic eigenvalue");
    }
    S den = 2.0 * (delta - S(2));
    Eigen::Matrix<S, 2, 2> m;
    m << -2.0 * e.thetap / den, (e.theta - e.phip) / den, (e.theta - e.phip) / den,
        2.0 * e.phi / den;
    return m;
}

} // namespace

Eigen::Matrix2d weyl_matrix(const Potential& q, double lambda) {
    return weyl_impl<double>(q, lambda);
}

Eigen::Matrix2cd weyl_matrix(const Potential& q, std::complex<double> lambda) {
    return weyl_impl<std::complex<double>>(q, lambda);
}

Eigen::Matrix2d weyl_matrix_closed(const Potential& q, double lambda) {
    return weyl_closed_impl<double>(q, lambda);
}

Eigen::Matrix2cd weyl_matrix_closed(const Potential& q, std::complex<double> lambda) {
    return weyl_closed_impl<std::complex<double>>(q, lambda);
}

Eigen::Matrix2cd weyl_from_response(const ResponseKernel& R, std::complex<double> k) {
    if (!(k.imag() > 0.0)) {
        throw invalid_input("weyl_from_response: need Im k > 0");
    }
    int n = R.natoms;
    if (n < 1 || std::abs(R.tmax() - kTwoPi * n) > 1e-6 * (1.0 + R.tmax())) {
        throw invalid_input("weyl_from_response: kernel horizon does not match its atom count");
    }
    using C = std::complex<double>;
    const C iu(0.0, 1.0);
    C E = std::exp(iu * kTwoPi * k);

    // whole-turn atoms carry half weight at both horizon ends
    C atoms = 0.5 + 0.5 * std::pow(E, n);
    for (int m = 1; m < n; ++m) {
        atoms += std::pow(E, m);
    }

    C i11 = 0.0, i12 = 0.0, i21 = 0.0, i22 = 0.0;
    double h = R.tgrid.h();
    int last = R.tgrid.count - 1;
    for (int j = 0; j <= last; ++j) {
        double w = (j == 0 || j == last) ? 0.5 * h : h;
        C ph = std::exp(iu * k * R.tgrid.node(j)) * w;
        i11 += R.r11[j] * ph;
        i12 += R.r12[j] * ph;
        i21 += R.r21[j] * ph;
        i22 += R.r22[j] * ph;
    }

    C colfac = 1.0 / (-iu * k); // second argument enters through its derivative
    Eigen::Matrix2cd M;
    M(0, 0) = iu * k * atoms + i11;
    M(0, 1) = i12 * colfac;
    M(1, 0) = i21;
    M(1, 1) = (atoms + i22) * colfac;
    return M;
}

} // namespace ringwave

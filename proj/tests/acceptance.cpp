// Acceptance gate for the ring toolkit. Each numbered block checks one
// contract end to end and prints a single [PASS]/[FAIL] line with the
// measured numbers; the exit code is the number of failed blocks.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ringwave/connecting.hpp"
#include "ringwave/gelfand_levitan.hpp"
#include "ringwave/goursat.hpp"
#include "ringwave/grid.hpp"
#include "ringwave/krein.hpp"
#include "ringwave/potential.hpp"
#include "ringwave/response.hpp"
#include "ringwave/spectral.hpp"
#include "ringwave/wavefield.hpp"

namespace {

using namespace ringwave;

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++failures;
    }
}

std::string fmt(const char* pattern, ...) {
    char buf[512];
    va_list args;
    va_start(args, pattern);
    std::vsnprintf(buf, sizeof(buf), pattern, args);
    va_end(args);
    return buf;
}

double zero_fn(double) { return 0.0; }
double one_fn(double) { return 1.0; }
double cosine_fn(double x) { return 0.5 + 0.3 * std::cos(x); }
double sine_fn(double x) { return std::sin(x); }

double sup_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

// relative L2 distance between a recovered potential and a reference
// function, probed on a fixed fine grid
double rel_l2_fn(const Potential& qhat, double (*f)(double)) {
    UniformGrid g(0.0, kTwoPi, 513);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.count; ++i) {
        double w = (i == 0 || i == g.count - 1) ? 0.5 : 1.0;
        double d = qhat.base.eval(g.node(i)) - f(g.node(i));
        num += w * d * d;
        den += w * f(g.node(i)) * f(g.node(i));
    }
    return std::sqrt(num / den);
}

double cross_l2(const Potential& a, const Potential& b, double (*f)(double)) {
    UniformGrid g(0.0, kTwoPi, 513);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.count; ++i) {
        double w = (i == 0 || i == g.count - 1) ? 0.5 : 1.0;
        double d = a.base.eval(g.node(i)) - b.base.eval(g.node(i));
        num += w * d * d;
        den += w * f(g.node(i)) * f(g.node(i));
    }
    return std::sqrt(num / den);
}

Potential invert_gl_route(const ResponseKernel& R) {
    ConnectingKernel K = build_connecting_kernel(R, kPi);
    GLKernel G = build_gl_kernel(K);
    GLSolution M = solve_gl(G);
    return recover_potential_gl(M);
}

double weyl_gap(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace

int main() {
    // 1: the flat potential runs through the whole pipeline fast and flat
    {
        Timer tm;
        try {
            Potential z = Potential::from_function(zero_fn, 33);
            ResponseKernel R = long_time_response(z, 1, kTwoPi / 256.0);
            double sup_r = std::max(std::max(sup_abs(R.r11), sup_abs(R.r12)),
                                    std::max(sup_abs(R.r21), sup_abs(R.r22)));
            KreinRecovery rec = recover_potential_krein(R, 64);
            double sup_k = sup_abs(rec.qhat.base.values);
            Potential qgl = invert_gl_route(R);
            double sup_g = sup_abs(qgl.base.values);
            double secs = tm.seconds();
            bool ok = sup_r <= 1e-10 && sup_k <= 1e-3 && sup_g <= 1e-3 && secs < 10.0;
            report(1, "flat-data pipeline", ok,
                   fmt("response sup %.2e, krein sup %.2e, gl sup %.2e, %.1f s", sup_r, sup_k,
                       sup_g, secs));
        } catch (const std::exception& e) {
            report(1, "flat-data pipeline", false, std::string("exception: ") + e.what());
        }
    }

    // responses reused by blocks 2, 3 and 9
    ResponseKernel R_one, R_cos;
    bool have_R_one = false;
    Potential q_one = Potential::from_function(one_fn, 513);
    Potential q_cos = Potential::from_function(cosine_fn, 513);

    // 2: krein route round trips two smooth potentials
    {
        bool ok = true;
        std::string detail;
        try {
            Timer t1;
            R_one = long_time_response(q_one, 1, kTwoPi / 512.0);
            have_R_one = true;
            KreinRecovery rec1 = recover_potential_krein(R_one, 128);
            double e1 = rel_l2_fn(rec1.qhat, one_fn);
            double s1 = t1.seconds();

            Timer t2;
            R_cos = long_time_response(q_cos, 1, kTwoPi / 512.0);
            KreinRecovery rec2 = recover_potential_krein(R_cos, 128);
            double e2 = rel_l2_fn(rec2.qhat, cosine_fn);
            double s2 = t2.seconds();

            ok = e1 <= 0.05 && e2 <= 0.05 && s1 < 60.0 && s2 < 60.0;
            detail = fmt("constant rel %.2e (%.1f s), cosine rel %.2e (%.1f s)", e1, s1, e2, s2);

            // 3: the two inversion routes land on the same potential
            KreinRecovery rk1 = recover_potential_krein(R_one, 128);
            KreinRecovery rk2 = recover_potential_krein(R_cos, 128);
            Potential g1 = invert_gl_route(R_one);
            Potential g2 = invert_gl_route(R_cos);
            double c1 = cross_l2(g1, rk1.qhat, one_fn);
            double c2 = cross_l2(g2, rk2.qhat, cosine_fn);
            report(2, "krein round trips", ok, detail);
            report(3, "route agreement", c1 <= 0.05 && c2 <= 0.05,
                   fmt("constant cross %.2e, cosine cross %.2e", c1, c2));
        } catch (const std::exception& e) {
            report(2, "krein round trips", false, std::string("exception: ") + e.what());
            report(3, "route agreement", false, "skipped after block 2 failure");
        }
    }

    // 4: the connecting operator reproduces state inner products
    {
        try {
            Potential q = Potential::from_function(sine_fn, 513);
            double h = kTwoPi / 512.0;
            double T = kPi / 2.0;
            ResponseKernel R = long_time_response(q, 1, h);
            ConnectingKernel K = build_connecting_kernel(R, T);
            double worst = 0.0;
            for (int i = 0; i < 10; ++i) {
                Control F1 = oracle::random_smooth_control(T, K.grid.count, 900 + 2 * i);
                Control F2 = oracle::random_smooth_control(T, K.grid.count, 901 + 2 * i);
                double lhs = Control::inner(apply_connecting(K, F1), F2);
                StateFunction v1 = control_to_state(q, F1, T, h);
                StateFunction v2 = control_to_state(q, F2, T, h);
                double rhs = StateFunction::inner(v1, v2);
                double scale = Control::norm(F1) * Control::norm(F2);
                worst = std::max(worst, std::abs(lhs - rhs) / scale);
            }
            report(4, "gram identity", worst <= 1e-3,
                   fmt("worst scaled mismatch %.2e over 10 random pairs", worst));
        } catch (const std::exception& e) {
            report(4, "gram identity", false, std::string("exception: ") + e.what());
        }
    }

    // 5: periodic spectra, closed forms and an independent discretization
    {
        try {
            Potential z = Potential::from_function(zero_fn, 33);
            Potential one = Potential::from_function(one_fn, 33);
            Potential qs = Potential::from_function(sine_fn, 513);

            std::vector<double> free_ev = {0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0};
            SpectralData S0 = periodic_spectrum(z, 10.0);
            double d0 = 1e30;
            if (S0.branches.size() == free_ev.size()) {
                d0 = 0.0;
                for (std::size_t i = 0; i < free_ev.size(); ++i) {
                    d0 = std::max(d0, std::abs(S0.branches[i].lambda - free_ev[i]));
                }
            }

            SpectralData S1 = periodic_spectrum(one, 11.0);
            double d1 = 1e30;
            if (S1.branches.size() == free_ev.size()) {
                d1 = 0.0;
                for (std::size_t i = 0; i < free_ev.size(); ++i) {
                    d1 = std::max(d1, std::abs(S1.branches[i].lambda - (free_ev[i] + 1.0)));
                }
            }

            SpectralData Ss = periodic_spectrum(qs, 26.0);
            std::vector<double> fd = oracle::fd_periodic_eigenvalues(qs, 2048, 10);
            double ds = 1e30;
            if (Ss.branches.size() >= 10) {
                ds = 0.0;
                for (int i = 0; i < 10; ++i) {
                    ds = std::max(ds, std::abs(Ss.branches[i].lambda - fd[i]));
                }
            }

            bool ok = d0 <= 1e-6 && d1 <= 1e-6 && ds <= 1e-4;
            report(5, "periodic spectra", ok,
                   fmt("flat dev %.2e, shifted dev %.2e, sine vs dense solver %.2e", d0, d1, ds));
        } catch (const std::exception& e) {
            report(5, "periodic spectra", false, std::string("exception: ") + e.what());
        }
    }

    // 6: kernel route and eigenfunction series produce the same field
    {
        try {
            Potential q = Potential::from_function(sine_fn, 513);
            SpectralData S = periodic_spectrum(q, 10100.0);
            WaveKernels K = make_wave_kernels(q, kTwoPi / 1024.0, 1);

            UniformGrid fg(0.0, 6.0, 1537);
            std::vector<double> f1(fg.count), f2(fg.count), f2p(fg.count);
            for (int i = 0; i < fg.count; ++i) {
                double t = fg.node(i);
                f1[i] = std::exp(-8.0 * (t - 1.5) * (t - 1.5));
                f2[i] = 0.5 * std::exp(-6.0 * (t - 2.0) * (t - 2.0));
                f2p[i] = 0.5 * (-12.0) * (t - 2.0) * std::exp(-6.0 * (t - 2.0) * (t - 2.0));
            }
            Control F(fg, f1, f2, f2p);

            // cell centers keep the comparison away from the x = 0 seam,
            // where the series converges to the midpoint of the jump
            double hx = kTwoPi / 64.0, ht = 6.0 / 64.0;
            UniformGrid xg(0.5 * hx, kTwoPi - 0.5 * hx, 64);
            UniformGrid tg(0.5 * ht, 6.0 - 0.5 * ht, 64);

            WaveField Wk = wave_field_on(K, F, xg, tg);
            WaveField Ws = spectral_wave_field_grid(S, F, xg, tg, 200);

            double num = 0.0, den = 0.0;
            for (int it = 0; it < tg.count; ++it) {
                for (int ix = 0; ix < xg.count; ++ix) {
                    double d = Ws.at(it, ix) - Wk.at(it, ix);
                    num += d * d;
                    den += Wk.at(it, ix) * Wk.at(it, ix);
                }
            }
            double rel = std::sqrt(num / den);
            report(6, "series field agreement", rel <= 0.01,
                   fmt("rel l2 %.2e over 64x64 probe grid, %zu branches", rel,
                       S.branches.size()));
        } catch (const std::exception& e) {
            report(6, "series field agreement", false, std::string("exception: ") + e.what());
        }
    }

    // 7: the three weyl evaluation routes agree
    {
        try {
            Potential z = Potential::from_function(zero_fn, 33);
            Potential one = Potential::from_function(one_fn, 33);
            Potential qs = Potential::from_function(sine_fn, 513);
            const Potential* pots[3] = {&z, &one, &qs};

            std::mt19937 rng(273);
            std::uniform_real_distribution<double> dist(-1.0, 30.0);
            double worst_pair = 0.0;
            for (const Potential* q : pots) {
                int accepted = 0;
                while (accepted < 20) {
                    double lam = dist(rng);
                    if (std::abs(discriminant(*q, lam) - 2.0) < 0.05) {
                        continue;
                    }
                    ++accepted;
                    Eigen::Matrix2d M = weyl_matrix(*q, lam);
                    Eigen::Matrix2d Mc = weyl_matrix_closed(*q, lam);
                    worst_pair = std::max(worst_pair, weyl_gap(M, Mc));
                }
            }

            std::complex<double> k(0.25, 0.3);
            ResponseKernel R8 = long_time_response(z, 8, kTwoPi / 128.0);
            Eigen::Matrix2cd Mb = weyl_from_response(R8, k);
            Eigen::Matrix2cd Md = weyl_matrix(z, k * k);
            double bridge = (Mb - Md).cwiseAbs().maxCoeff() / Md.cwiseAbs().maxCoeff();

            Eigen::Matrix2d Mq = weyl_matrix(z, 1.0 / 16.0);
            double pin = std::max(std::abs(Mq(0, 0) + 0.125), std::abs(Mq(1, 1) + 2.0));
            pin = std::max(pin, std::max(std::abs(Mq(0, 1)), std::abs(Mq(1, 0))));

            bool ok = worst_pair <= 1e-8 && bridge <= 0.05 && pin <= 1e-8;
            report(7, "weyl matrix routes", ok,
                   fmt("constructive vs closed %.2e (60 draws), bridge rel %.2e, "
                       "quarter-point dev %.2e",
                       worst_pair, bridge, pin));
        } catch (const std::exception& e) {
            report(7, "weyl matrix routes", false, std::string("exception: ") + e.what());
        }
    }

    // 8: integration quality: wronskian drift, seam continuity order,
    // kernel convergence against an independent fixed-point solver
    {
        try {
            Potential z = Potential::from_function(zero_fn, 33);
            Potential one = Potential::from_function(one_fn, 33);
            Potential qs = Potential::from_function(sine_fn, 513);
            double drift = 0.0;
            for (const Potential* q : {&z, &one, &qs}) {
                // sweep the same window the eigenvalue detector scans; far
                // below min q the solutions grow exponentially and the unit
                // Wronskian is lost to roundoff, not to the scheme
                double lo = *std::min_element(q->base.values.begin(), q->base.values.end()) - 1.0;
                for (int i = 0; i <= 32; ++i) {
                    double lam = lo + (30.0 - lo) * i / 32.0;
                    drift = std::max(drift, fundamental_pair(*q, lam).wronskian_drift);
                }
            }

            double tprobe = 5.0 * kPi / 8.0; // aligned with both characteristic grids
            double thoriz = 0.75 * kPi;      // whole number of steps at both resolutions
            GoursatKernel wc =
                solve_goursat(qs, KernelKind::w1, kTwoPi / 128.0, thoriz, PotentialMode::compact);
            GoursatKernel wf =
                solve_goursat(qs, KernelKind::w1, kTwoPi / 256.0, thoriz, PotentialMode::compact);
            double dc = wc.continuity_defect(tprobe);
            double df = wf.continuity_defect(tprobe);
            double hf = kTwoPi / 256.0;
            double cconst = df / (hf * hf);
            bool seam_ok = df < 1e-12 || (dc / df >= 2.5 && dc / df <= 20.0);

            oracle::GoursatOracle ref(one, KernelKind::w1, 2.5, 384);
            std::vector<std::pair<double, double>> probes = {
                {0.0, 0.5}, {0.3, 1.2}, {-0.7, 1.5}, {0.0, 2.3}, {0.5, 1.8}, {-1.0, 1.2}};
            double ec = 0.0, ef = 0.0;
            GoursatKernel gc = solve_goursat(one, KernelKind::w1, kTwoPi / 64.0, 2.5, PotentialMode::compact);
            GoursatKernel gf = solve_goursat(one, KernelKind::w1, kTwoPi / 128.0, 2.5, PotentialMode::compact);
            for (auto [x, t] : probes) {
                ec = std::max(ec, std::abs(gc.value(x, t) - ref.value(x, t)));
                ef = std::max(ef, std::abs(gf.value(x, t) - ref.value(x, t)));
            }
            double factor = ec / ef;

            bool ok = drift <= 1e-8 && seam_ok && factor >= 3.5;
            report(8, "kernel convergence", ok,
                   fmt("wronskian drift %.2e, seam constant %.2e (ratio %.2f), "
                       "halving factor %.2f",
                       drift, cconst, df > 0.0 ? dc / df : 0.0, factor));
        } catch (const std::exception& e) {
            report(8, "kernel convergence", false, std::string("exception: ") + e.what());
        }
    }

    // 9: flat-control solves steer to the independently integrated state
    {
        try {
            if (!have_R_one) {
                R_one = long_time_response(q_one, 1, kTwoPi / 512.0);
            }
            double worst = 0.0;
            for (double T : {0.5, 1.0, kPi / 2.0}) {
                ConnectingKernel K = build_connecting_kernel(R_one, T);
                Control F = solve_krein(K, T);
                StateFunction v = control_to_state(q_one, F, T);
                double dev = 0.0;
                for (int i = 0; i < v.grid.count; ++i) {
                    double x = v.grid.node(i);
                    double ref = (x >= 0.0 ? 1.0 : -1.0) *
                                 oracle::rk4_cauchy_value(one_fn, std::abs(x));
                    dev = std::max(dev, std::abs(v.values[i] - ref));
                }
                worst = std::max(worst, dev);
            }
            report(9, "steered states", worst <= 5e-3,
                   fmt("worst state deviation %.2e over T in {0.5, 1.0, pi/2}", worst));
        } catch (const std::exception& e) {
            report(9, "steered states", false, std::string("exception: ") + e.what());
        }
    }

    std::printf("%d of 9 criteria passed\n", 9 - failures);
    return failures;
}

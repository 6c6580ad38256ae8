#include "ringwave/cli.hpp"

#include <cctype>
#include <cmath>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ringwave/errors.hpp"
#include "ringwave/gelfand_levitan.hpp"
#include "ringwave/io.hpp"

namespace ringwave {

namespace {

std::complex<double> parse_complex(const std::string& s) {
    std::string t;
    for (char c : s) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            t += c;
        }
    }
    if (t.empty()) {
        throw invalid_input("empty complex literal");
    }
    bool has_j = t.back() == 'j' || t.back() == 'J';
    if (!has_j) {
        return {std::stod(t), 0.0};
    }
    t.pop_back();
    // split at the last +/- that is not an exponent sign
    size_t cut = std::string::npos;
    for (size_t i = t.size(); i-- > 1;) {
        if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    try {
        if (cut == std::string::npos) {
            return {0.0, std::stod(t.empty() ? "1" : t)};
        }
        double re = std::stod(t.substr(0, cut));
        std::string im = t.substr(cut);
        if (im == "+") {
            im = "1";
        } else if (im == "-") {
            im = "-1";
        }
        return {re, std::stod(im)};
    } catch (const std::exception&) {
        throw invalid_input("bad complex literal '" + s + "'");
    }
}

double rel_l2_against(const GridFunction& got, const GridFunction& ref) {
    // both compared on a fixed fine grid; the reference norm scales
    UniformGrid g(0.0, kTwoPi, 513);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < g.count; ++i) {
        double d = got.eval(g.node(i)) - ref.eval(g.node(i));
        double r = ref.eval(g.node(i));
        double w = (i == 0 || i == g.count - 1) ? 0.5 : 1.0;
        num += w * d * d;
        den += w * r * r;
    }
    if (den == 0.0) {
        return std::sqrt(num * g.h());
    }
    return std::sqrt(num / den);
}

struct CommonOpts {
    double h = kTwoPi / 512.0;
    int nT = 128;
    int nterms = 200;
    double lambda_max = 120.0;
    int horizon_n = 4;
    std::string route = "krein";
    std::string out;
};

int cmd_forward(const std::string& input, const CommonOpts& o) {
    Potential q = read_potential_csv(input);
    ResponseKernel R = long_time_response(q, o.horizon_n, o.h);
    RunManifest m;
    m.command = "forward";
    m.inputs = {input};
    m.add_param("h", o.h);
    m.add_param("horizon_n", o.horizon_n);
    m.outputs = {o.out};
    write_response_json(o.out, R, m);
    return 0;
}

Potential invert_gl(const ResponseKernel& R) {
    ConnectingKernel K = build_connecting_kernel(R, kPi);
    GLKernel G = build_gl_kernel(K);
    GLSolution M = solve_gl(G);
    return recover_potential_gl(M);
}

int cmd_invert(const std::string& input, const CommonOpts& o) {
    ResponseKernel R = read_response_json(input);
    RunManifest m;
    m.command = "invert";
    m.inputs = {input};
    m.add_param("route", o.route);
    m.add_param("nT", o.nT);
    std::string report_path = o.out + ".report.json";
    m.outputs = {o.out, report_path};

    if (o.route == "krein") {
        KreinRecovery rec = recover_potential_krein(R, o.nT);
        write_recovered_csv(o.out, rec.qhat, m);
        write_krein_report_json(report_path, rec.report, m);
    } else if (o.route == "gl") {
        Potential qhat = invert_gl(R);
        write_recovered_csv(o.out, qhat, m);
        nlohmann::ordered_json body;
        body["route"] = "gl";
        body["nodes"] = qhat.base.grid.count;
        write_report_json(report_path, body.dump(), m);
    } else {
        throw invalid_input("unknown route '" + o.route + "', expected krein or gl");
    }
    return 0;
}

int cmd_spectral(const std::string& input, const CommonOpts& o) {
    Potential q = read_potential_csv(input);
    SpectralData S = periodic_spectrum(q, o.lambda_max);
    for (const std::string& w : S.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    RunManifest m;
    m.command = "spectral";
    m.inputs = {input};
    m.add_param("lambda_max", o.lambda_max);
    m.outputs = {o.out};
    write_spectrum_json(o.out, S, m);
    return 0;
}

int cmd_weyl(const std::string& input, const std::vector<double>& lambdas,
             const std::string& kstr, const CommonOpts& o) {
    if (!lambdas.empty() && !kstr.empty()) {
        throw invalid_input("weyl: pass either --lambda or --k, not both");
    }
    if (lambdas.empty() && kstr.empty()) {
        throw invalid_input("weyl: one of --lambda or --k is required");
    }
    RunManifest m;
    m.command = "weyl";
    m.inputs = {input};
    m.outputs = {o.out};
    std::vector<WeylRow> rows;
    if (!lambdas.empty()) {
        Potential q = read_potential_csv(input);
        for (double lam : lambdas) {
            Eigen::Matrix2d M = weyl_matrix(q, lam);
            WeylRow r;
            r.lambda = {lam, 0.0};
            r.M = M.cast<std::complex<double>>();
            rows.push_back(r);
            m.add_param("lambda", lam);
        }
    } else {
        std::complex<double> k = parse_complex(kstr);
        ResponseKernel R = read_response_json(input);
        WeylRow r;
        r.lambda = k * k;
        r.M = weyl_from_response(R, k);
        rows.push_back(r);
        m.add_param("k", kstr);
    }
    write_weyl_csv(o.out, rows, m);
    return 0;
}

int cmd_roundtrip(const std::string& input, const CommonOpts& o) {
    Potential q = read_potential_csv(input);
    ResponseKernel R = long_time_response(q, 1, o.h);
    KreinRecovery rec = recover_potential_krein(R, o.nT);
    Potential qgl = invert_gl(R);

    double qnorm = 0.0;
    {
        UniformGrid g(0.0, kTwoPi, 513);
        for (int i = 0; i < g.count; ++i) {
            double w = (i == 0 || i == g.count - 1) ? 0.5 : 1.0;
            qnorm += w * q.base.eval(g.node(i)) * q.base.eval(g.node(i));
        }
        qnorm = std::sqrt(qnorm * g.h());
    }

    double ek = rel_l2_against(rec.qhat.base, q.base);
    double eg = rel_l2_against(qgl.base, q.base);
    double cross = rel_l2_against(qgl.base, rec.qhat.base);

    nlohmann::ordered_json body;
    body["potential_l2"] = qnorm;
    body["krein_rel_l2"] = ek;
    body["krein_pass"] = ek <= 0.05;
    body["gl_rel_l2"] = eg;
    body["gl_pass"] = eg <= 0.05;
    body["route_rel_l2"] = cross;
    body["route_pass"] = cross <= 0.05;
    body["guarded_fraction"] = rec.report.guarded_fraction;
    body["residual_l2"] = rec.report.residual_l2;

    RunManifest m;
    m.command = "roundtrip";
    m.inputs = {input};
    m.add_param("h", o.h);
    m.add_param("nT", o.nT);
    m.outputs = {o.out};
    write_report_json(o.out, body.dump(), m);
    return 0;
}

} // namespace

int run_cli(int argc, char** argv) {
    CLI::App app{"Boundary-control toolkit for the potential on a ring"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string input;
    std::vector<double> lambdas;
    std::string kstr;

    auto add_common = [&](CLI::App* sub, bool needs_out) {
        // keep the short -h free so it cannot shadow the --h step option
        sub->set_help_flag("--help", "print this help message and exit");
        sub->add_option("input", input, "input file")->required();
        auto* opt = sub->add_option("--out", o.out, "output file");
        if (needs_out) {
            opt->required();
        }
        sub->add_option("--h", o.h, "time/space step");
        sub->add_option("--nT", o.nT, "number of recovery horizons");
        sub->add_option("--nterms", o.nterms, "series truncation");
        sub->add_option("--lambda-max", o.lambda_max, "spectral search bound");
        sub->add_option("--horizon-n", o.horizon_n, "number of whole turns");
        sub->add_option("--route", o.route, "inversion route: krein or gl");
    };

    CLI::App* fw = app.add_subcommand("forward", "potential -> response kernel");
    add_common(fw, true);
    CLI::App* inv = app.add_subcommand("invert", "response kernel -> recovered potential");
    add_common(inv, true);
    CLI::App* sp = app.add_subcommand("spectral", "potential -> periodic spectrum");
    add_common(sp, true);
    CLI::App* wy = app.add_subcommand("weyl", "Weyl matrix rows");
    add_common(wy, true);
    wy->add_option("--lambda", lambdas, "real spectral parameters (direct route)");
    wy->add_option("--k", kstr, "complex wavenumber a+bj (response route)");
    CLI::App* rt = app.add_subcommand("roundtrip", "forward + invert with error report");
    add_common(rt, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fw->parsed()) {
            return cmd_forward(input, o);
        }
        if (inv->parsed()) {
            return cmd_invert(input, o);
        }
        if (sp->parsed()) {
            return cmd_spectral(input, o);
        }
        if (wy->parsed()) {
            return cmd_weyl(input, lambdas, kstr, o);
        }
        if (rt->parsed()) {
            return cmd_roundtrip(input, o);
        }
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace ringwave

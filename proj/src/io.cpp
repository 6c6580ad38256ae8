#include "ringwave/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ringwave/errors.hpp"

namespace ringwave {

namespace {

using json = nlohmann::ordered_json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw invalid_input("cannot open " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw invalid_input("cannot open " + path + " for writing");
    }
    return out;
}

std::string strip(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) {
        return "";
    }
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(strip(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(strip(cur));
    return out;
}

double parse_num(const std::string& s, const std::string& where) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) {
            throw invalid_input("trailing characters");
        }
        return v;
    } catch (const std::exception&) {
        throw invalid_input("bad number '" + s + "' in " + where);
    }
}

// Rows of a CSV file, comment lines skipped, header validated against
// the allowed column sets.
std::vector<std::vector<double>> read_table(const std::string& path,
                                            const std::vector<std::string>& headers) {
    std::istringstream in(slurp(path));
    std::string line;
    bool have_header = false;
    size_t ncols = 0;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        std::string t = strip(line);
        if (t.empty() || t[0] == '#') {
            continue;
        }
        if (!have_header) {
            std::string lowered;
            for (char c : t) {
                lowered += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
            }
            std::string compact;
            for (const std::string& col : split_csv(lowered)) {
                if (!compact.empty()) {
                    compact += ',';
                }
                compact += col;
            }
            bool ok = false;
            for (const std::string& h : headers) {
                if (compact == h) {
                    ok = true;
                    ncols = split_csv(h).size();
                }
            }
            if (!ok) {
                throw invalid_input(path + ": unexpected header '" + t + "'");
            }
            have_header = true;
            continue;
        }
        std::vector<std::string> cells = split_csv(t);
        if (cells.size() != ncols) {
            throw invalid_input(path + ": row with " + std::to_string(cells.size()) +
                                " columns, expected " + std::to_string(ncols));
        }
        std::vector<double> row;
        for (const std::string& c : cells) {
            row.push_back(parse_num(c, path));
        }
        rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw invalid_input(path + ": missing header row");
    }
    return rows;
}

void check_uniform(const std::vector<std::vector<double>>& rows, double start, double end,
                   const std::string& path) {
    size_t n = rows.size();
    if (n < 2) {
        throw invalid_input(path + ": need at least two sample rows");
    }
    if (std::abs(rows.front()[0] - start) > 1e-9 || std::abs(rows.back()[0] - end) > 1e-6) {
        throw invalid_input(path + ": samples must span [" + format_double(start) + ", " +
                            format_double(end) + "]");
    }
    double h = (rows.back()[0] - rows.front()[0]) / static_cast<double>(n - 1);
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(rows[i][0] - (rows.front()[0] + h * static_cast<double>(i))) >
            1e-6 * (1.0 + std::abs(h))) {
            throw invalid_input(path + ": sample abscissae must be uniform");
        }
    }
}

json manifest_json(const RunManifest& m) {
    json j;
    j["command"] = m.command;
    j["version"] = kVersion;
    j["inputs"] = m.inputs;
    json params = json::object();
    for (const auto& [k, v] : m.params) {
        params[k] = v;
    }
    j["params"] = params;
    j["outputs"] = m.outputs;
    json sums = json::object();
    for (const std::string& p : m.inputs) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(checksum_file(p)));
        sums[p] = buf;
    }
    j["checksums"] = sums;
    return j;
}

void write_json_body(const std::string& path, json& j, const RunManifest& m) {
    j["manifest"] = manifest_json(m);
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

} // namespace

void RunManifest::add_param(const std::string& name, double value) {
    params.emplace_back(name, format_double(value));
}

void RunManifest::add_param(const std::string& name, int value) {
    params.emplace_back(name, std::to_string(value));
}

void RunManifest::add_param(const std::string& name, const std::string& value) {
    params.emplace_back(name, value);
}

std::string RunManifest::to_json() const { return manifest_json(*this).dump(); }

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 14695981039346656037ULL;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ULL;
    }
    return h;
}

std::uint64_t checksum_file(const std::string& path) {
    std::string bytes = slurp(path);
    return fnv1a64(bytes.data(), bytes.size());
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_complex(std::complex<double> z) {
    char buf[144];
    std::snprintf(buf, sizeof(buf), "%.17g%+.17gj", z.real(), z.imag());
    return buf;
}

Potential read_potential_csv(const std::string& path) {
    auto rows = read_table(path, {"x,q"});
    check_uniform(rows, 0.0, kTwoPi, path);
    std::vector<double> q;
    q.reserve(rows.size());
    for (const auto& r : rows) {
        q.push_back(r[1]);
    }
    return Potential::from_samples(std::move(q));
}

namespace {

void write_xy_csv(const std::string& path, const char* header, const GridFunction& f,
                  const RunManifest& m) {
    std::ofstream out = open_out(path);
    out << "# manifest: " << manifest_json(m).dump() << "\n";
    out << header << "\n";
    for (int i = 0; i < f.grid.count; ++i) {
        out << format_double(f.grid.node(i)) << "," << format_double(f.values[i]) << "\n";
    }
}

} // namespace

void write_potential_csv(const std::string& path, const Potential& q, const RunManifest& m) {
    write_xy_csv(path, "x,q", q.base, m);
}

void write_recovered_csv(const std::string& path, const Potential& qhat, const RunManifest& m) {
    write_xy_csv(path, "x,qhat", qhat.base, m);
}

Control read_control_csv(const std::string& path) {
    auto rows = read_table(path, {"t,f1,f2", "t,f1,f2,f2p"});
    double T = rows.back()[0];
    if (!(T > 0.0)) {
        throw invalid_input(path + ": control horizon must be positive");
    }
    check_uniform(rows, 0.0, T, path);
    int n = static_cast<int>(rows.size());
    UniformGrid g(0.0, T, n);
    std::vector<double> f1(n), f2(n);
    for (int i = 0; i < n; ++i) {
        f1[i] = rows[i][1];
        f2[i] = rows[i][2];
    }
    if (rows.front().size() == 4) {
        std::vector<double> f2p(n);
        for (int i = 0; i < n; ++i) {
            f2p[i] = rows[i][3];
        }
        return Control(g, std::move(f1), std::move(f2), std::move(f2p));
    }
    return Control(g, std::move(f1), std::move(f2));
}

void write_control_csv(const std::string& path, const Control& F, const RunManifest& m) {
    std::ofstream out = open_out(path);
    out << "# manifest: " << manifest_json(m).dump() << "\n";
    out << "t,f1,f2,f2p\n";
    for (int i = 0; i < F.grid.count; ++i) {
        out << format_double(F.grid.node(i)) << "," << format_double(F.f1[i]) << ","
            << format_double(F.f2[i]) << "," << format_double(F.f2p[i]) << "\n";
    }
}

void write_wave_field_csv(const std::string& path, const WaveField& u, const RunManifest& m) {
    std::ofstream out = open_out(path);
    out << "# manifest: " << manifest_json(m).dump() << "\n";
    out << "x,t,u\n";
    for (int it = 0; it < u.tgrid.count; ++it) {
        for (int ix = 0; ix < u.xgrid.count; ++ix) {
            out << format_double(u.xgrid.node(ix)) << "," << format_double(u.tgrid.node(it))
                << "," << format_double(u.values[it][ix]) << "\n";
        }
    }
}

ResponseKernel read_response_json(const std::string& path) {
    json j;
    try {
        j = json::parse(slurp(path));
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(path + ": " + e.what());
    }
    try {
        double tmax = j.at("tmax").get<double>();
        int n = j.at("n").get<int>();
        int natoms = j.at("natoms").get<int>();
        if (!(tmax > 0.0) || n < 2 || natoms < 1) {
            throw invalid_input(path + ": invalid response dimensions");
        }
        ResponseKernel R;
        R.tgrid = UniformGrid(0.0, tmax, n);
        R.natoms = natoms;
        const char* keys[4] = {"r11", "r12", "r21", "r22"};
        std::vector<double>* dest[4] = {&R.r11, &R.r12, &R.r21, &R.r22};
        for (int k = 0; k < 4; ++k) {
            *dest[k] = j.at(keys[k]).get<std::vector<double>>();
            if (static_cast<int>(dest[k]->size()) != n) {
                throw invalid_input(path + ": array " + keys[k] + " does not have n entries");
            }
        }
        return R;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(path + ": " + e.what());
    }
}

void write_response_json(const std::string& path, const ResponseKernel& R, const RunManifest& m) {
    json j;
    j["tmax"] = R.tmax();
    j["n"] = R.tgrid.count;
    j["natoms"] = R.natoms;
    j["r11"] = R.r11;
    j["r12"] = R.r12;
    j["r21"] = R.r21;
    j["r22"] = R.r22;
    write_json_body(path, j, m);
}

void write_spectrum_json(const std::string& path, const SpectralData& S, const RunManifest& m) {
    json j;
    std::vector<double> ev, beta, gamma;
    std::vector<int> mult;
    for (const EigenBranch& b : S.branches) {
        ev.push_back(b.lambda);
        mult.push_back(b.multiplicity);
        beta.push_back(b.beta);
        gamma.push_back(b.gamma);
    }
    j["eigenvalues"] = ev;
    j["multiplicities"] = mult;
    j["beta"] = beta;
    j["gamma"] = gamma;
    write_json_body(path, j, m);
}

void write_krein_report_json(const std::string& path, const KreinReport& rep,
                             const RunManifest& m) {
    json j;
    j["condition_numbers"] = rep.condition_numbers;
    j["guarded_fraction"] = rep.guarded_fraction;
    j["residual_l2"] = rep.residual_l2;
    write_json_body(path, j, m);
}

void write_connecting_json(const std::string& path, const ConnectingKernel& K,
                           const RunManifest& m) {
    json j;
    j["T"] = K.T;
    j["n"] = K.grid.count;
    const Eigen::MatrixXd* blocks[4] = {&K.C11, &K.C12, &K.C21, &K.C22};
    const char* keys[4] = {"C11", "C12", "C21", "C22"};
    for (int b = 0; b < 4; ++b) {
        json rows = json::array();
        for (int i = 0; i < blocks[b]->rows(); ++i) {
            json row = json::array();
            for (int jj = 0; jj < blocks[b]->cols(); ++jj) {
                row.push_back((*blocks[b])(i, jj));
            }
            rows.push_back(std::move(row));
        }
        j[keys[b]] = std::move(rows);
    }
    write_json_body(path, j, m);
}

void write_weyl_csv(const std::string& path, const std::vector<WeylRow>& rows,
                    const RunManifest& m) {
    std::ofstream out = open_out(path);
    out << "# manifest: " << manifest_json(m).dump() << "\n";
    out << "re_lambda,im_lambda,M11,M12,M21,M22\n";
    for (const WeylRow& r : rows) {
        out << format_double(r.lambda.real()) << "," << format_double(r.lambda.imag()) << ","
            << format_complex(r.M(0, 0)) << "," << format_complex(r.M(0, 1)) << ","
            << format_complex(r.M(1, 0)) << "," << format_complex(r.M(1, 1)) << "\n";
    }
}

void write_report_json(const std::string& path, const std::string& body_json,
                       const RunManifest& m) {
    json j;
    try {
        j = json::parse(body_json);
    } catch (const nlohmann::json::exception& e) {
        throw invalid_input(std::string("report body is not valid JSON: ") + e.what());
    }
    write_json_body(path, j, m);
}

} // namespace ringwave

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "ringwave/connecting.hpp"
#include "ringwave/krein.hpp"
#include "ringwave/spectral.hpp"

namespace ringwave {

inline constexpr const char* kVersion = "0.1.0";

// Reproducibility stamp attached to every output file: CSV files carry
// it as a leading "# manifest: {...}" comment, JSON files as a
// top-level "manifest" member. Input files are identified by content
// checksum, never by timestamp, so identical runs produce identical
// bytes.
struct RunManifest {
    std::string command;
    std::vector<std::string> inputs;
    std::vector<std::pair<std::string, std::string>> params; // name, printed value
    std::vector<std::string> outputs;

    void add_param(const std::string& name, double value);
    void add_param(const std::string& name, int value);
    void add_param(const std::string& name, const std::string& value);
    std::string to_json() const;
};

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t checksum_file(const std::string& path);

std::string format_double(double v);                // 17 significant digits
std::string format_complex(std::complex<double> z); // "a+bj"

Potential read_potential_csv(const std::string& path);
void write_potential_csv(const std::string& path, const Potential& q, const RunManifest& m);
void write_recovered_csv(const std::string& path, const Potential& qhat, const RunManifest& m);

Control read_control_csv(const std::string& path);
void write_control_csv(const std::string& path, const Control& F, const RunManifest& m);

void write_wave_field_csv(const std::string& path, const WaveField& u, const RunManifest& m);

ResponseKernel read_response_json(const std::string& path);
void write_response_json(const std::string& path, const ResponseKernel& R, const RunManifest& m);

void write_spectrum_json(const std::string& path, const SpectralData& S, const RunManifest& m);
void write_krein_report_json(const std::string& path, const KreinReport& rep,
                             const RunManifest& m);
void write_connecting_json(const std::string& path, const ConnectingKernel& K,
                           const RunManifest& m);

struct WeylRow {
    std::complex<double> lambda;
    Eigen::Matrix2cd M;
};
void write_weyl_csv(const std::string& path, const std::vector<WeylRow>& rows,
                    const RunManifest& m);

// Report body is a pre-serialized JSON object; the manifest member is
// spliced in before writing.
void write_report_json(const std::string& path, const std::string& body_json,
                       const RunManifest& m);

} // namespace ringwave

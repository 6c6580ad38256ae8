#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>

#include "ringwave/wavefield.hpp"

namespace ringwave {

// Endpoint data of the fundamental solutions phi (phi(0)=0, phi'(0)=1)
// and theta (theta(0)=1, theta'(0)=0) at x = 2 pi, with optional full
// profiles. wronskian_drift is the largest deviation of
// theta phi' - theta' phi from 1 seen along the integration.
struct FundamentalPair {
    double lambda = 0.0;
    double phi_end = 0.0, phi_prime_end = 0.0;
    double theta_end = 0.0, theta_prime_end = 0.0;
    double wronskian_drift = 0.0;
    std::vector<double> xs, phi, theta; // filled on request
};

FundamentalPair fundamental_pair(const Potential& q, double lambda, bool with_profile = false);

// Lyapunov/Hill discriminant phi'(2 pi) + theta(2 pi).
double discriminant(const Potential& q, double lambda);

// One normalized eigenfunction of the periodic problem. Double
// eigenvalues contribute two branches sharing lambda, each tagged
// with multiplicity 2. y = beta phi - gamma theta, beta = y'(0),
// gamma = -y(0).
struct EigenBranch {
    double lambda = 0.0;
    int multiplicity = 1;
    double beta = 0.0;
    double gamma = 0.0;
    GridFunction profile; // L2-normalized, on [0, 2 pi]
};

struct SpectralData {
    std::vector<EigenBranch> branches; // ascending in lambda
    std::vector<std::string> warnings;
};

// All periodic eigenvalues up to lambda_max with eigenfunctions and
// boundary pairs. Warns (does not fail) on suspicious root spacing
// or an unexpected eigenvalue count.
SpectralData periodic_spectrum(const Potential& q, double lambda_max);

// Partial sum of the matrix measure atoms (beta, gamma) x (beta, gamma)
// over branches with eigenvalue below lambda.
Eigen::Matrix2d spectral_measure(const SpectralData& S, double lambda);

// Eigenfunction-series field value; nterms = 0 uses every branch.
double spectral_wave_field(const SpectralData& S, const Control& F, double x, double t,
                           int nterms = 0);

// Same series evaluated over a whole grid, reusing per-branch
// time coefficients across x.
WaveField spectral_wave_field_grid(const SpectralData& S, const Control& F,
                                   const UniformGrid& xg, const UniformGrid& tg, int nterms = 0);

// Truncated series sum of c_k(t) (beta_k, gamma_k).
std::pair<double, double> spectral_response(const SpectralData& S, const Control& F, double t,
                                            int nterms = 0);

// Weyl matrix assembled constructively from the boundary maps on the
// defect space spanned by phi and theta. Signals a pole when the
// discriminant is 2 within tolerance.
Eigen::Matrix2d weyl_matrix(const Potential& q, double lambda);
Eigen::Matrix2cd weyl_matrix(const Potential& q, std::complex<double> lambda);

// Closed-form Weyl matrix used as an independent cross-check of the
// constructive assembly.
Eigen::Matrix2d weyl_matrix_closed(const Potential& q, double lambda);
Eigen::Matrix2cd weyl_matrix_closed(const Potential& q, std::complex<double> lambda);

// Fourier bridge: damped transform of a long-horizon response kernel,
// singular atoms summed analytically. Requires Im k > 0.
Eigen::Matrix2cd weyl_from_response(const ResponseKernel& R, std::complex<double> k);

} // namespace ringwave

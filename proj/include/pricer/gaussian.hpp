#pragma once

#include <vector>

#include "pricer/core.hpp"

namespace pricer {

double norm_pdf(double x);

// Phi(x) to machine precision; accepts +-infinity, throws on NaN.
double norm_cdf(double x);

// Inverse of norm_cdf on (0,1), Wichura's AS 241 double-precision rational
// approximation.
double inv_norm_cdf(double p);

// P(Y0 <= a, Y1 <= b) for a standard bivariate normal pair with correlation
// rho. |rho| = 1 reduces to the comonotone/antimonotone univariate case.
double binorm_cdf(double a, double b, double rho);

// Correlation matrix of a Brownian path observed at increasing times, with
// sign decorations, plus its tridiagonal inverse (unsigned).
struct CorrelationStructure {
    int dim = 0;
    std::vector<std::vector<double>> rho;       // signed: rho[i][j] = s_i s_j sqrt(tau_i/tau_j), i<=j
    std::vector<std::vector<double>> a_matrix;  // unsigned inverse of |rho|; empty if not Markov-built
    std::vector<Sign> signs;

    static CorrelationStructure from_matrix(std::vector<std::vector<double>> rho);
};

CorrelationStructure markov_correlation(double t, const std::vector<double>& expiries,
                                        const std::vector<Sign>& signs);

struct MvnResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

// Rectangle probability P(Y_i <= limits_i, i = 0..n-1) for N(0, corr.rho).
// Markov-structured correlations go through a deterministic chain quadrature;
// general positive-definite matrices fall back to a seeded randomized
// quasi-Monte Carlo rule with an error estimate.
MvnResult mvn_cdf(const std::vector<double>& limits, const CorrelationStructure& corr,
                  double tol = 1e-8);

}  // namespace pricer

#pragma once

#include "opnorm/inequalities.hpp"
#include "opnorm/spectral.hpp"

#include <vector>

namespace opnorm::equality {

struct ClusterRecord {
    double mu = 0.0;                  // eigenvalue cluster of B
    double proj_norm = 0.0;           // ||X pi_mu v|| (||pi_mu v|| for Cordes)
    bool tested = false;              // proj_norm above the visibility threshold
    bool is_eigvec = false;           // residual within tolerance
    double achieved_eigenvalue = 0.0; // Rayleigh quotient <w,Aw>/<w,w>
    double residual = 0.0;            // ||Aw - target w|| / ||w||
};

struct CommonEigenvalue {
    double lambda = 0.0;
    double mu = 0.0;
    double gap = 0.0;
};

struct EqualityVerdict {
    std::vector<ClusterRecord> clusters;
    std::vector<CommonEigenvalue> common_eigenvalues;
    bool consistent = false; // every visible cluster maps into the right eigenspace
    double achieved = 0.0;   // ||A^r X B^{1-r} v|| (Cordes: ||A^s B^s v||)
    bool asserted = false;   // achieved close enough to 1 for the theorem to bind
};

// All cluster pairs with |lambda_i - mu_j| <= tol * max(1,|lambda_i|,|mu_j|).
std::vector<CommonEigenvalue> find_common_eigenvalues(
    const spectral::SpectralDecomposition& DA,
    const spectral::SpectralDecomposition& DB, double tol = 1e-8);

// Per B-eigenvalue cluster mu: w = X pi_mu v must satisfy Aw = mu w whenever
// w is numerically visible.  tol <= 0 selects 1e-7 * max(1, ||A||).
EqualityVerdict analyze_mcintosh_equality(const ineq::McIntoshInstance& inst,
                                          const Vec& v, double tol = -1.0);

// Cordes variant: w = pi_mu v must satisfy Aw = (1/mu) w.
EqualityVerdict analyze_cordes_equality(const ineq::CordesInstance& inst,
                                        const Vec& v, double tol = -1.0);

struct TransferReport {
    bool precondition_met = false; // value at the instance exponent is 1
    double value_at_r = 0.0;
    std::vector<std::pair<double, double>> values; // (s, ||A^s X B^{1-s} v||)
    double max_deviation = 0.0;
    bool all_one = false;
};

// Equality at one exponent transfers to the whole grid.
TransferReport equality_transfer_check(const ineq::McIntoshInstance& inst, const Vec& v,
                                       const std::vector<double>& exponent_grid,
                                       double tol = 1e-9);
TransferReport equality_transfer_check(const ineq::CordesInstance& inst, const Vec& v,
                                       const std::vector<double>& exponent_grid,
                                       double tol = 1e-9);

// Top right-singular vector of A^e X B^{1-e} (Cordes: A^e B^e).
Vec extremal_vector(const ineq::McIntoshInstance& inst, double exponent);
Vec extremal_vector(const ineq::CordesInstance& inst, double exponent);

} // namespace opnorm::equality

#pragma once

#include "opnorm/inequalities.hpp"
#include "opnorm/matrix.hpp"
#include "opnorm/refinement.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace opnorm::fuzz {

struct FuzzConfig {
    refine::SignMode mode = refine::SignMode::McIntosh;
    long trials = 100;
    std::uint64_t seed = 1;
    int n_min = 2;
    int n_max = 6;
    double spectrum_min = 1e-2; // positive
    double spectrum_max = 1e2;
    std::vector<double> r_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    int jobs = 1;
    int equality_every = 10; // every k-th trial synthesizes an equality instance
};

// Q diag(spectrum) Q^T with Q from Gram-Schmidt on a seeded Gaussian draw.
SymMatrix random_spd(int n, const std::vector<double>& spectrum, std::uint64_t seed);

Matrix random_gaussian(int n, std::uint64_t seed);

struct EqualitySynthesis {
    ineq::McIntoshInstance inst; // normalized by construction
    Vec v;                       // achieves ||A^r X B^{1-r} v|| = 1
    double shared_eigenvalue = 0.0;
};

// Diagonal recipe 1/lambda_i = |x_i| = 1/mu_i at one shared index, remaining
// entries kept strictly inside the norm constraints, conjugated by
// independent random orthogonal maps.
EqualitySynthesis synthesize_equality_instance(int n, double shared_eigenvalue,
                                               std::uint64_t seed);

struct RatioSearch {
    Matrix X;
    Vec v;
    double ratio = 0.0;
    int accepted_steps = 0;
    std::vector<double> trace; // ratio after each accepted step
};

// Alternating maximization of the normalized McIntosh ratio over X (finite
// difference ascent with backtracking) and v (extremal vector).
RatioSearch maximize_ratio(const SymMatrix& A, const SymMatrix& B, double r,
                           int iters, std::uint64_t seed);

struct TrialRecord {
    long trial = 0;
    int n = 0;
    double r = 0.0;
    double d = 0.0;
    double ratio = 0.0;
    double c_cert = 0.0;
    std::string verdict; // ok | violation | eq-consistent | eq-inconsistent
};

struct CampaignReport {
    FuzzConfig config;
    std::vector<TrialRecord> rows;
    long violations = 0;
    long equality_trials = 0;
    long equality_inconsistent = 0;
    double min_slack_with_d = 1.0; // min over d>0 trials of 1 - ratio
    double max_c_cert = 0.0;
};

CampaignReport run_campaign(const FuzzConfig& config);

} // namespace opnorm::fuzz

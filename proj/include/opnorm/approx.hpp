#pragma once

#include "opnorm/matrix.hpp"
#include "opnorm/refinement.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

namespace opnorm::approx {

// Member of the structured class
//   f(t) = sum_k e^{-2 a_k i t} ( sum_l c_{k,l} e^{b_l i t} )^2
// paired against g(y) = P(pi r, y) / (2 pi (1-r)).
struct ApproxInstance {
    std::vector<double> a;
    std::vector<double> b;
    Matrix C; // c_{k,l}
    double r = 0.5;
};

std::complex<double> eval_f(const ApproxInstance& inst, double t);
refine::ExponentialSum expand(const ApproxInstance& inst);

struct SupReport {
    double value = 0.0;
    double window = 0.0;
    int samples = 0;
    double grid_spacing = 0.0;
};

// Lower estimate of ||f||_inf on [-window, window].
SupReport sup_norm(const ApproxInstance& inst, double window = 200.0, int samples = 20001);

struct PairingResult {
    double value = 0.0;     // real part of the truncated integral
    double imag_part = 0.0;
    double tail_bound = 0.0;
};

// Truncated quadrature of f * g over [-50, 50]; g is a probability density,
// so the constant function pairs to 1.
PairingResult pairing(const ApproxInstance& inst);

// Same pairing through the expansion:  sum_j c_j ghat(d_j)  with
// ghat(d) = sinh(pi (1-r) |d|) / ((1-r) sinh(pi |d|)).  Exact up to rounding;
// the optimizer objective.
double pairing_expansion(const refine::ExponentialSum& f, double r);
double kernel_transform(double r, double freq); // ghat above

struct ClassConstraint {
    enum class Kind { H, G };
    Kind kind = Kind::H;
    double delta = 1.0;
};

struct MembershipReport {
    bool member = false;
    double min_gap = 0.0;
    std::array<int, 3> witness{}; // (i, j, k) for H; (i, j, -1) for G
};

MembershipReport membership(const ApproxInstance& inst, const ClassConstraint& constraint);

struct HistoryRow {
    long restart = 0;
    long iteration = 0;
    double best_value = 0.0;
};

struct SearchReport {
    double best_value = 0.0;
    ApproxInstance best;
    std::vector<HistoryRow> history;
    bool feasible = false;
    long evaluations = 0;
    double certificate_cap = 0.0; // 1 - c_cert(n, r, 2 delta)
    bool consistent_with_certificate = false;
};

// Random restarts plus coordinate descent over (a, b, C); frequencies are
// repaired into the constraint by shifting a, and C is rescaled (with a
// 0.999 deflation) so the sampled sup never exceeds 1.  Deterministic for a
// fixed seed.
SearchReport search_sup(int n, const ClassConstraint& constraint, double r,
                        long budget, std::uint64_t seed);

} // namespace opnorm::approx

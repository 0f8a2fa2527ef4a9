#include "opnorm/approx.hpp"

#include "opnorm/quad.hpp"
#include "opnorm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace opnorm::approx {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPairingWindow = 50.0;

int check_dims(const ApproxInstance& inst, const char* who) {
    const int n = static_cast<int>(inst.a.size());
    if (static_cast<int>(inst.b.size()) != n || inst.C.rows() != n || inst.C.cols() != n)
        throw std::invalid_argument(std::string(who) + ": a, b, C dimensions disagree");
    return n;
}

} // namespace

std::complex<double> eval_f(const ApproxInstance& inst, double t) {
    const int n = check_dims(inst, "eval_f");
    std::complex<double> total = 0.0;
    for (int k = 0; k < n; ++k) {
        std::complex<double> inner = 0.0;
        for (int l = 0; l < n; ++l)
            inner += inst.C(k, l) * std::complex<double>(std::cos(inst.b[l] * t), std::sin(inst.b[l] * t));
        const std::complex<double> outer(std::cos(2.0 * inst.a[k] * t), -std::sin(2.0 * inst.a[k] * t));
        total += outer * inner * inner;
    }
    return total;
}

refine::ExponentialSum expand(const ApproxInstance& inst) {
    const int n = check_dims(inst, "expand");
    refine::ExponentialSum sum;
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int m = l; m < n; ++m) {
                const double coef = inst.C(k, l) * inst.C(k, m) * (l == m ? 1.0 : 2.0);
                if (coef != 0.0) sum.add(coef, inst.b[l] + inst.b[m] - 2.0 * inst.a[k]);
            }
    return sum;
}

SupReport sup_norm(const ApproxInstance& inst, double window, int samples) {
    if (!(window > 0.0) || samples < 1000)
        throw std::invalid_argument("sup_norm: need window > 0 and samples >= 1000");
    const auto est = refine::sup_estimate(expand(inst), window, samples);
    return {est.value, est.window, est.samples, est.grid_spacing};
}

PairingResult pairing(const ApproxInstance& inst) {
    if (!(inst.r > 0.0 && inst.r < 1.0))
        throw std::invalid_argument("pairing: r must lie in (0,1)");
    const double norm = 2.0 * kPi * (1.0 - inst.r);
    auto integrand = [&](double y) {
        return eval_f(inst, y) * (refine::poisson_kernel(kPi * inst.r, y) / norm);
    };
    quad::Options opt;
    opt.abs_tol = 1e-10;
    const std::complex<double> val =
        quad::adaptive_simpson(integrand, -kPairingWindow, kPairingWindow, opt);

    PairingResult res;
    res.value = val.real();
    res.imag_part = val.imag();
    // |f| <= sum |c_j| bounds the tail of the kernel integral.
    res.tail_bound = expand(inst).coef_abs_sum() * 2.0 * std::exp(-kPairingWindow) *
                     2.0 * std::sin(kPi * inst.r) / norm;
    return res;
}

double kernel_transform(double r, double freq) {
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("kernel_transform: r must lie in (0,1)");
    const double u = kPi * std::abs(freq);
    if (u == 0.0) return 1.0;
    // sinh((1-r)u) / ((1-r) sinh(u)) in overflow-safe form.
    const double num = -std::expm1(-2.0 * (1.0 - r) * u);
    const double den = -std::expm1(-2.0 * u);
    return std::exp(-r * u) * num / ((1.0 - r) * den);
}

double pairing_expansion(const refine::ExponentialSum& f, double r) {
    double s = 0.0;
    for (const auto& t : f.terms) s += t.coef * kernel_transform(r, t.freq);
    return s;
}

MembershipReport membership(const ApproxInstance& inst, const ClassConstraint& constraint) {
    const int n = check_dims(inst, "membership");
    MembershipReport rep;
    rep.min_gap = std::numeric_limits<double>::infinity();
    if (constraint.kind == ClassConstraint::Kind::H) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const double g = std::abs(inst.b[i] + inst.b[j] - 2.0 * inst.a[k]);
                    if (g < rep.min_gap) {
                        rep.min_gap = g;
                        rep.witness = {i, j, k};
                    }
                }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double g = std::abs(inst.a[i] - inst.b[j]);
                if (g < rep.min_gap) {
                    rep.min_gap = g;
                    rep.witness = {i, j, -1};
                }
            }
    }
    rep.member = rep.min_gap >= constraint.delta;
    return rep;
}

namespace {

// Shift entries of a until the constraint holds.  Each violated gap is
// resolved by pushing the nearest a to the admissible side.
bool repair_frequencies(ApproxInstance& inst, const ClassConstraint& constraint) {
    for (int pass = 0; pass < 64; ++pass) {
        const MembershipReport m = membership(inst, constraint);
        if (m.member) return true;
        if (constraint.kind == ClassConstraint::Kind::H) {
            const double target = inst.b[m.witness[0]] + inst.b[m.witness[1]];
            double& ak = inst.a[m.witness[2]];
            const double lo = 0.5 * (target - constraint.delta);
            const double hi = 0.5 * (target + constraint.delta);
            ak = (ak <= 0.5 * target) ? lo - 1e-9 : hi + 1e-9;
        } else {
            double& ai = inst.a[m.witness[0]];
            const double bj = inst.b[m.witness[1]];
            ai = (ai <= bj) ? bj - constraint.delta - 1e-9 : bj + constraint.delta + 1e-9;
        }
    }
    return membership(inst, constraint).member;
}

// Deflate C so the sampled sup sits at 0.999.
void rescale_to_unit_sup(ApproxInstance& inst, double window, int samples) {
    const double sup = refine::sup_estimate(expand(inst), window, samples).value;
    if (sup <= 0.0) return;
    const double gamma = std::sqrt(0.999 / sup);
    for (int i = 0; i < inst.C.rows(); ++i)
        for (int j = 0; j < inst.C.cols(); ++j) inst.C(i, j) *= gamma;
}

} // namespace

SearchReport search_sup(int n, const ClassConstraint& constraint, double r,
                        long budget, std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("search_sup: budget must be >= 1");
    if (n < 1) throw std::invalid_argument("search_sup: n must be >= 1");
    if (!(constraint.delta > 0.0))
        throw std::invalid_argument("search_sup: delta must be > 0");

    constexpr double kSupWindow = 200.0;
    constexpr int kSupSamplesFast = 4001;

    SearchReport rep;
    rep.best_value = -std::numeric_limits<double>::infinity();
    rng::Stream stream(seed);

    long evals = 0;
    long restart = 0;
    auto objective = [&](ApproxInstance& inst) {
        rescale_to_unit_sup(inst, kSupWindow, kSupSamplesFast);
        ++evals;
        return pairing_expansion(expand(inst), r);
    };

    while (evals < budget) {
        ApproxInstance inst;
        inst.r = r;
        inst.a.resize(n);
        inst.b.resize(n);
        inst.C = Matrix(n, n);
        for (double& v : inst.a) v = stream.next_uniform(-5.0, 5.0);
        for (double& v : inst.b) v = stream.next_uniform(-5.0, 5.0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inst.C(i, j) = stream.next_uniform(-1.0, 1.0);
        if (!repair_frequencies(inst, constraint)) {
            ++restart;
            continue;
        }
        rep.feasible = true;

        double current = objective(inst);
        if (current > rep.best_value) {
            rep.best_value = current;
            rep.best = inst;
            rep.history.push_back({restart, 0, current});
        }

        // Coordinate descent over [a | b | C] with a halving step schedule.
        double step = 1.0;
        int stalls = 0;
        long iteration = 0;
        const int dims = 2 * n + n * n;
        while (evals < budget && stalls < 20) {
            bool improved = false;
            for (int dim = 0; dim < dims && evals < budget; ++dim) {
                for (double sign : {+1.0, -1.0}) {
                    if (evals >= budget) break;
                    ApproxInstance trial = inst;
                    if (dim < n)
                        trial.a[dim] += sign * step;
                    else if (dim < 2 * n)
                        trial.b[dim - n] += sign * step;
                    else {
                        const int idx = dim - 2 * n;
                        trial.C(idx / n, idx % n) += sign * step;
                    }
                    if (!repair_frequencies(trial, constraint)) continue;
                    const double value = objective(trial);
                    ++iteration;
                    if (value > current + 1e-14) {
                        inst = trial;
                        current = value;
                        improved = true;
                        if (current > rep.best_value) {
                            rep.best_value = current;
                            rep.best = inst;
                            rep.history.push_back({restart, iteration, current});
                        }
                        break;
                    }
                }
            }
            if (!improved) {
                step *= 0.5;
                ++stalls;
            }
        }
        ++restart;
    }

    rep.evaluations = evals;
    if (!rep.feasible) {
        rep.best_value = 0.0;
        return rep;
    }
    // The one-sided class gap delta corresponds to d = 2 delta in the
    // certificate convention (the proof works with gap >= d/2).
    const auto cert = refine::certified_improvement(n, r, 2.0 * constraint.delta);
    rep.certificate_cap = 1.0 - cert.c_cert;
    rep.consistent_with_certificate = rep.best_value <= rep.certificate_cap + 1e-6;
    return rep;
}

} // namespace opnorm::approx

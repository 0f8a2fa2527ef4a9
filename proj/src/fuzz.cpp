#include "opnorm/fuzz.hpp"

#include "opnorm/equality.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace opnorm::fuzz {

namespace {

// Gram-Schmidt orthonormalization of the columns of g (n small, done twice
// for orthogonality at the 1e-15 level).
Matrix orthonormalize(Matrix g) {
    const int n = g.rows();
    for (int pass = 0; pass < 2; ++pass)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < j; ++k) {
                double proj = 0.0;
                for (int i = 0; i < n; ++i) proj += g(i, j) * g(i, k);
                for (int i = 0; i < n; ++i) g(i, j) -= proj * g(i, k);
            }
            double nrm = 0.0;
            for (int i = 0; i < n; ++i) nrm += g(i, j) * g(i, j);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-12) {
                g(j % n, j) += 1.0; // retry direction; measure-zero event
                --j;
                continue;
            }
            for (int i = 0; i < n; ++i) g(i, j) /= nrm;
        }
    return g;
}

} // namespace

Matrix random_gaussian(int n, std::uint64_t seed) {
    rng::Stream stream(seed);
    Matrix g(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g(i, j) = stream.next_gaussian();
    return g;
}

SymMatrix random_spd(int n, const std::vector<double>& spectrum, std::uint64_t seed) {
    if (static_cast<int>(spectrum.size()) != n)
        throw std::invalid_argument("random_spd: spectrum size mismatch");
    for (double s : spectrum)
        if (!(s > 0.0)) throw std::invalid_argument("random_spd: spectrum must be positive");

    const Matrix q = orthonormalize(random_gaussian(n, seed));
    SymMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < n; ++k) s += spectrum[k] * q(i, k) * q(j, k);
            m.set_sym(i, j, s);
        }
    return m;
}

EqualitySynthesis synthesize_equality_instance(int n, double shared_eigenvalue,
                                               std::uint64_t seed) {
    if (!(shared_eigenvalue > 0.0))
        throw std::invalid_argument("synthesize_equality_instance: shared eigenvalue must be > 0");
    rng::Stream stream(seed);

    std::vector<double> lam(n), mu(n), x(n);
    lam[0] = mu[0] = shared_eigenvalue;
    x[0] = 1.0 / shared_eigenvalue;
    for (int i = 1; i < n; ++i) {
        lam[i] = shared_eigenvalue * std::exp(stream.next_uniform(-1.0, 1.0));
        mu[i] = shared_eigenvalue * std::exp(stream.next_uniform(-1.0, 1.0));
        // strictly interior so the norms stay pinned at index 0
        x[i] = stream.next_uniform(0.05, 0.95) * std::min(1.0 / lam[i], 1.0 / mu[i]);
    }

    const Matrix u = orthonormalize(random_gaussian(n, rng::substream(seed, 101)));
    const Matrix w = orthonormalize(random_gaussian(n, rng::substream(seed, 202)));

    EqualitySynthesis out;
    out.shared_eigenvalue = shared_eigenvalue;
    out.inst.r = 0.5;
    out.inst.normalized = true;

    // A = U diag(lam) U^T, B = W diag(mu) W^T, X = U diag(x) W^T.
    SymMatrix a(n), b(n);
    Matrix xm(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double sa = 0.0, sb = 0.0, sx = 0.0;
            for (int k = 0; k < n; ++k) {
                sa += lam[k] * u(i, k) * u(j, k);
                sb += mu[k] * w(i, k) * w(j, k);
                sx += x[k] * u(i, k) * w(j, k);
            }
            if (j >= i) {
                a.set_sym(i, j, sa);
                b.set_sym(i, j, sb);
            }
            xm(i, j) = sx;
        }
    out.inst.A = a;
    out.inst.B = b;
    out.inst.X = xm;
    out.v.assign(n, 0.0);
    for (int i = 0; i < n; ++i) out.v[i] = w(i, 0);
    return out;
}

namespace {

double mcintosh_ratio(const SymMatrix& A, const Matrix& X, const SymMatrix& B, double r) {
    ineq::McIntoshInstance inst{A, X, B, r, false};
    const auto rep = ineq::evaluate_mcintosh(inst);
    return rep.rhs > 0.0 ? rep.lhs / rep.rhs : 0.0;
}

} // namespace

RatioSearch maximize_ratio(const SymMatrix& A, const SymMatrix& B, double r,
                           int iters, std::uint64_t seed) {
    const int n = A.n();
    rng::Stream stream(rng::substream(seed, 7));
    Matrix x = random_gaussian(n, rng::substream(seed, 11));

    RatioSearch out;
    double current = mcintosh_ratio(A, x, B, r);
    out.trace.push_back(current);

    double step = 0.25;
    for (int iter = 0; iter < iters; ++iter) {
        const double xnorm = std::max(frobenius(x), 1e-12);
        const double h = 1e-6 * xnorm;

        // central finite-difference gradient of the normalized ratio
        Matrix grad(n, n);
        double gnorm = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Matrix xp = x, xm = x;
                xp(i, j) += h;
                xm(i, j) -= h;
                grad(i, j) = (mcintosh_ratio(A, xp, B, r) - mcintosh_ratio(A, xm, B, r)) / (2.0 * h);
                gnorm += grad(i, j) * grad(i, j);
            }
        gnorm = std::sqrt(gnorm);

        bool accepted = false;
        if (gnorm > 1e-12) {
            double alpha = step * xnorm;
            for (int bt = 0; bt < 25 && !accepted; ++bt) {
                Matrix trial = x;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) trial(i, j) += alpha * grad(i, j) / gnorm;
                const double value = mcintosh_ratio(A, trial, B, r);
                if (value > current) {
                    x = trial;
                    current = value;
                    accepted = true;
                    ++out.accepted_steps;
                    out.trace.push_back(current);
                } else {
                    alpha *= 0.5;
                }
            }
        }
        if (!accepted) {
            // degenerate top singular pair or vanished gradient: random poke
            Matrix trial = x;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    trial(i, j) += 1e-3 * xnorm * stream.next_gaussian();
            const double value = mcintosh_ratio(A, trial, B, r);
            if (value > current) {
                x = trial;
                current = value;
                ++out.accepted_steps;
                out.trace.push_back(current);
            } else {
                step *= 0.5;
                if (step < 1e-10) break;
            }
        }
    }

    out.X = x;
    out.ratio = current;
    ineq::McIntoshInstance inst{A, x, B, r, false};
    out.v = equality::extremal_vector(ineq::normalize(inst), r);
    return out;
}

namespace {

TrialRecord run_one_trial_impl(const FuzzConfig& cfg, long trial) {
    const std::uint64_t sub = rng::substream(cfg.seed, static_cast<std::uint64_t>(trial));
    rng::Stream stream(sub);

    TrialRecord rec;
    rec.trial = trial;

    const bool equality_trial =
        cfg.equality_every > 0 && trial % cfg.equality_every == 0 &&
        cfg.mode == refine::SignMode::McIntosh;

    if (equality_trial) {
        const int n = stream.next_int(std::max(2, cfg.n_min), cfg.n_max);
        const double shared = std::exp(stream.next_uniform(-0.7, 0.7));
        const auto synth = synthesize_equality_instance(n, shared, rng::substream(sub, 3));
        const auto verdict = equality::analyze_mcintosh_equality(synth.inst, synth.v);
        rec.n = n;
        rec.r = synth.inst.r;
        rec.d = 0.0;
        rec.ratio = verdict.achieved;
        rec.c_cert = 0.0;
        const bool found_common = !verdict.common_eigenvalues.empty();
        rec.verdict = (verdict.consistent && found_common) ? "eq-consistent" : "eq-inconsistent";
        return rec;
    }

    const int n = stream.next_int(cfg.n_min, cfg.n_max);
    const double lmin = std::log(cfg.spectrum_min);
    const double lmax = std::log(cfg.spectrum_max);
    std::vector<double> spec_a(n), spec_b(n);
    for (double& s : spec_a) s = std::exp(stream.next_uniform(lmin, lmax));
    for (double& s : spec_b) s = std::exp(stream.next_uniform(lmin, lmax));
    const SymMatrix a = random_spd(n, spec_a, rng::substream(sub, 1));
    const SymMatrix b = random_spd(n, spec_b, rng::substream(sub, 2));
    const double r = cfg.r_grid[stream.next_int(0, static_cast<int>(cfg.r_grid.size()) - 1)];

    rec.n = n;
    rec.r = r;

    refine::RefinedReport rep;
    if (cfg.mode == refine::SignMode::McIntosh) {
        Matrix x = random_gaussian(n, rng::substream(sub, 3));
        rep = refine::refined_mcintosh(ineq::McIntoshInstance{a, x, b, r, false});
    } else {
        rep = refine::refined_cordes(ineq::CordesInstance{a, b, r, false});
    }

    rec.ratio = rep.plain.ratio;
    rec.d = rep.d_available ? rep.gap.d : 0.0;
    rec.c_cert = rep.certificate ? rep.bound.c_cert : 0.0;

    bool ok = rep.plain.ratio <= 1.0 + 1e-9;
    if (rep.certificate) {
        ok = ok && rep.sound && rep.bound.c_cert > 0.0;
    }
    rec.verdict = ok ? "ok" : "violation";
    return rec;
}

// A failed trial is recorded and the campaign continues.
TrialRecord run_one_trial(const FuzzConfig& cfg, long trial) {
    try {
        return run_one_trial_impl(cfg, trial);
    } catch (const std::exception&) {
        TrialRecord rec;
        rec.trial = trial;
        rec.verdict = "error";
        return rec;
    }
}

} // namespace

CampaignReport run_campaign(const FuzzConfig& cfg) {
    if (cfg.trials < 1) throw std::invalid_argument("run_campaign: trials must be >= 1");
    if (!(cfg.spectrum_min > 0.0))
        throw std::invalid_argument("run_campaign: spectrum_min must be > 0");

    CampaignReport report;
    report.config = cfg;
    report.rows.resize(cfg.trials);

    const int jobs = std::max(1, cfg.jobs);
    if (jobs == 1) {
        for (long t = 0; t < cfg.trials; ++t) report.rows[t] = run_one_trial(cfg, t);
    } else {
        std::vector<std::thread> pool;
        std::atomic<long> next{0};
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&] {
                for (long t = next.fetch_add(1); t < cfg.trials; t = next.fetch_add(1))
                    report.rows[t] = run_one_trial(cfg, t);
            });
        for (auto& th : pool) th.join();
    }

    for (const TrialRecord& rec : report.rows) {
        if (rec.verdict == "violation") ++report.violations;
        if (rec.verdict == "eq-consistent" || rec.verdict == "eq-inconsistent") {
            ++report.equality_trials;
            if (rec.verdict == "eq-inconsistent") ++report.equality_inconsistent;
        }
        if (rec.d > 0.0) {
            report.min_slack_with_d = std::min(report.min_slack_with_d, 1.0 - rec.ratio);
            report.max_c_cert = std::max(report.max_c_cert, rec.c_cert);
        }
    }
    return report;
}

} // namespace opnorm::fuzz

#include "opnorm/acceptance.hpp"

#include "opnorm/approx.hpp"
#include "opnorm/equality.hpp"
#include "opnorm/fuzz.hpp"
#include "opnorm/io.hpp"
#include "opnorm/quad.hpp"
#include "opnorm/refinement.hpp"
#include "opnorm/rng.hpp"
#include "opnorm/strip.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <vector>

namespace opnorm::accept {

namespace {

constexpr double kPi = std::numbers::pi;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    int failures = 0;

    void report(std::ostream& out, int index, const std::string& name, bool pass,
                const std::string& detail) {
        out << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << index << ": " << name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
        if (!pass) ++failures;
    }
};

Vec random_unit(rng::Stream& stream, int n) {
    Vec v(n);
    for (double& c : v) c = stream.next_gaussian();
    scale_in_place(v, 1.0 / norm2(v));
    return v;
}

ineq::McIntoshInstance random_normalized(rng::Stream& stream, int n, double logspread = 1.5) {
    std::vector<double> sa(n), sb(n);
    for (double& s : sa) s = std::exp(stream.next_uniform(-logspread, logspread));
    for (double& s : sb) s = std::exp(stream.next_uniform(-logspread, logspread));
    ineq::McIntoshInstance inst;
    inst.A = fuzz::random_spd(n, sa, stream.next_u64());
    inst.B = fuzz::random_spd(n, sb, stream.next_u64());
    inst.X = fuzz::random_gaussian(n, stream.next_u64());
    inst.r = 0.1 + 0.1 * static_cast<double>(stream.next_u64() % 9);
    return ineq::normalize(inst);
}

// 1. The worked 2x2 diagonal family: lhs = a^r, rhs = a^r max(1, b^{1-r}).
bool criterion_worked_example(std::string& detail) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double a : {1.0, 2.0, 5.0})
        for (double b : {0.5, 1.0, 2.0})
            for (double r : {0.3, 0.5, 0.7}) {
                ineq::McIntoshInstance inst;
                inst.A = SymMatrix::diag({a, 0.0});
                inst.X = Matrix::identity(2);
                inst.B = SymMatrix::diag({1.0, b});
                inst.r = r;
                const auto rep = ineq::evaluate_mcintosh(inst);
                const double lhs_want = std::pow(a, r);
                const double rhs_want = std::pow(a, r) * std::max(1.0, std::pow(b, 1.0 - r));
                worst = std::max(worst, std::abs(rep.lhs - lhs_want) / lhs_want);
                worst = std::max(worst, std::abs(rep.rhs - rhs_want) / rhs_want);
            }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "max rel err " << worst << ", " << dt << " s";
    detail = os.str();
    return worst <= 1e-10 && dt < 1.0;
}

// 2. Inequality fuzzing: 1000 McIntosh + 1000 Cordes + 500 Fujii-Furuta.
bool criterion_fuzzing(std::string& detail, bool& campaigns_sound) {
    const auto t0 = Clock::now();
    fuzz::FuzzConfig mc;
    mc.trials = 1000;
    mc.seed = 20240601;
    mc.n_min = 2;
    mc.n_max = 8;
    mc.equality_every = 0;
    const auto mrep = fuzz::run_campaign(mc);

    fuzz::FuzzConfig cd = mc;
    cd.mode = refine::SignMode::Cordes;
    cd.seed = 20240602;
    const auto crep = fuzz::run_campaign(cd);

    long ff_violations = 0;
    rng::Stream stream(20240603);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 7);
        std::vector<double> sa(n), sb(n);
        for (double& s : sa) s = std::exp(stream.next_uniform(std::log(1e-2), std::log(1e2)));
        for (double& s : sb) s = std::exp(stream.next_uniform(std::log(1e-2), std::log(1e2)));
        const SymMatrix a = fuzz::random_spd(n, sa, stream.next_u64());
        const SymMatrix b = fuzz::random_spd(n, sb, stream.next_u64());
        const Matrix x = fuzz::random_gaussian(n, stream.next_u64());
        const auto rep = ineq::evaluate_fujii_furuta(a, x, b);
        if (!(rep.ratio <= 1.0 + 1e-9)) ++ff_violations;
    }

    // certificate soundness across every campaign trial (feeds criterion 8)
    campaigns_sound = true;
    for (const auto* rep : {&mrep, &crep})
        for (const auto& row : rep->rows)
            if (row.d > 0.0 && !(row.c_cert > 0.0 && row.ratio <= 1.0 - row.c_cert + 1e-9))
                campaigns_sound = false;

    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "violations mcintosh=" << mrep.violations << " cordes=" << crep.violations
       << " fujii=" << ff_violations << ", " << dt << " s";
    detail = os.str();
    return mrep.violations == 0 && crep.violations == 0 && ff_violations == 0 && dt < 120.0;
}

// 3. Unitarity of A^{it}.
bool criterion_unitarity(std::string& detail) {
    rng::Stream stream(20240604);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 5);
        std::vector<double> spec(n);
        for (double& s : spec) s = std::exp(stream.next_uniform(-2.0, 2.0));
        const SymMatrix a = fuzz::random_spd(n, spec, stream.next_u64());
        const auto d = spectral::eigendecompose(a);
        const double t = stream.next_uniform(-20.0, 20.0);
        const Vec v = random_unit(stream, n);
        const CVec image = spectral::complex_power_apply(d, {0.0, t}, to_complex(v));
        worst = std::max(worst, std::abs(cnorm(image) - 1.0));
    }
    std::ostringstream os;
    os << "max |  ||A^{it}v|| - 1 | = " << worst;
    detail = os.str();
    return worst <= 1e-9;
}

// 4 & 5. Expansion identity and boundary/max-modulus on 200 instances.
bool criterion_expansion_and_bounds(std::string& d4, std::string& d5, bool& bound_ok) {
    rng::Stream stream(20240605);
    double worst_expansion = 0.0;
    double worst_modulus = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 4);
        const auto inst = random_normalized(stream, n);
        const Vec v = random_unit(stream, n);
        const auto F = strip::StripFunction::mcintosh(inst, v);
        const auto sum = F.expansion();
        for (int i = 0; i < 200; ++i) {
            const double t = -30.0 + 60.0 * i / 199.0;
            worst_expansion = std::max(worst_expansion,
                                       std::abs(sum.eval(t) - F.eval({0.0, t})));
        }
        // boundary lines
        for (int i = 0; i < 161; ++i) {
            const double t = -40.0 + 80.0 * i / 160.0;
            worst_modulus = std::max(worst_modulus, std::abs(F.eval({0.0, t})));
            worst_modulus = std::max(worst_modulus, std::abs(F.eval({1.0, t})));
        }
        const auto grid = strip::eval_grid(F, 21, 161, 40.0);
        worst_modulus = std::max({worst_modulus, grid.boundary_max, grid.interior_max});
    }
    {
        std::ostringstream os;
        os << "max |expansion - F| = " << worst_expansion;
        d4 = os.str();
    }
    {
        std::ostringstream os;
        os << "max |F| = " << worst_modulus;
        d5 = os.str();
    }
    bound_ok = worst_modulus <= 1.0 + 1e-8;
    return worst_expansion <= 1e-8;
}

// 6. Poisson machinery: mass identity and reconstruction.
bool criterion_poisson(std::string& detail) {
    double worst_mass = 0.0;
    for (int i = 1; i <= 30; ++i) {
        const double x = 0.1 * i;
        auto f = [x](double y) { return refine::poisson_kernel(x, y); };
        quad::Options opt;
        opt.abs_tol = 1e-11;
        const double mass = quad::adaptive_simpson(f, -50.0, 50.0, opt) +
                            4.0 * std::sin(x) * std::exp(-50.0);
        worst_mass = std::max(worst_mass, std::abs(mass - 2.0 * (kPi - x)));
    }

    rng::Stream stream(20240606);
    double worst_rec = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        const auto inst = random_normalized(stream, n);
        const auto F = strip::StripFunction::mcintosh(inst, random_unit(stream, n));
        const auto rec = strip::poisson_reconstruct(F, {0.5, 0.0}, 40.0, 1e-8);
        worst_rec = std::max(worst_rec, std::abs(rec.value - F.eval({0.5, 0.0})));
    }
    std::ostringstream os;
    os << "mass err " << worst_mass << ", reconstruction err " << worst_rec;
    detail = os.str();
    return worst_mass <= 1e-6 && worst_rec <= 1e-6;
}

// 7. Theorem 1 at desk scale.
bool criterion_theorem1(std::string& detail) {
    rng::Stream stream(20240607);
    int eq_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        const auto synth = fuzz::synthesize_equality_instance(
            n, std::exp(stream.next_uniform(-0.7, 0.7)), stream.next_u64());
        const auto verdict = equality::analyze_mcintosh_equality(synth.inst, synth.v);
        if (!(verdict.consistent && !verdict.common_eigenvalues.empty())) ++eq_fail;
    }

    int strict_fail = 0;
    int found = 0;
    while (found < 100) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        ineq::McIntoshInstance inst;
        std::vector<double> sa(n), sb(n);
        for (double& s : sa) s = std::exp(stream.next_uniform(-2.0, 2.0));
        for (double& s : sb) s = std::exp(stream.next_uniform(-2.0, 2.0));
        inst.A = fuzz::random_spd(n, sa, stream.next_u64());
        inst.B = fuzz::random_spd(n, sb, stream.next_u64());
        inst.X = fuzz::random_gaussian(n, stream.next_u64());
        inst.r = 0.1 + 0.1 * static_cast<double>(stream.next_u64() % 9);
        const auto norm = ineq::normalize(inst);
        const auto da = spectral::eigendecompose(norm.A);
        const auto db = spectral::eigendecompose(norm.B);
        // disjoint in log scale by at least 1e-2
        bool disjoint = true;
        for (double la : da.eigenvalues)
            for (double lb : db.eigenvalues)
                if (std::abs(std::log(la) - std::log(lb)) < 1e-2) disjoint = false;
        if (!disjoint) continue;
        const auto gap = refine::compute_d(da.eigenvalues, db.eigenvalues, refine::SignMode::McIntosh);
        if (!(gap.d > 0.0)) continue;
        ++found;
        const auto rep = refine::refined_mcintosh(norm);
        if (!(rep.certificate && rep.plain.ratio <= 1.0 - rep.bound.c_cert + 1e-9)) ++strict_fail;
    }
    std::ostringstream os;
    os << "equality failures " << eq_fail << ", strict failures " << strict_fail;
    detail = os.str();
    return eq_fail == 0 && strict_fail == 0;
}

// 8. Certificate positivity and monotonicity (campaign soundness comes from
// criterion 2's sweeps).
bool criterion_certificate(std::string& detail, bool campaigns_sound) {
    bool mono_ok = true;
    bool positive_ok = true;
    for (int n : {2, 4, 8}) {
        double prev = 0.0;
        for (int i = 1; i <= 50; ++i) {
            const double d = 0.1 * i;
            const double c = refine::certified_improvement(n, 0.5, d).c_cert;
            if (!(c > 0.0)) positive_ok = false;
            if (c < prev - 1e-15) mono_ok = false;
            prev = c;
        }
    }
    std::ostringstream os;
    os << "campaign soundness " << (campaigns_sound ? "ok" : "violated") << ", positivity "
       << (positive_ok ? "ok" : "violated") << ", monotone " << (mono_ok ? "ok" : "violated");
    detail = os.str();
    return campaigns_sound && positive_ok && mono_ok;
}

// 9. Oscillation-window and rearrangement bounds.
bool criterion_integral_bounds(std::string& detail) {
    const auto t0 = Clock::now();
    rng::Stream stream(20240608);
    int l1_fail = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int terms = 1 + static_cast<int>(stream.next_u64() % 10);
        const double eta = stream.next_uniform(0.1, 1.0);
        refine::ExponentialSum sum;
        for (int j = 0; j < terms; ++j) {
            const double mag = eta + stream.next_uniform(0.0, 5.0);
            sum.add(stream.next_uniform(-2.0, 2.0), (stream.next_u64() & 1) ? mag : -mag);
        }
        if (!refine::oscillation_window_check(sum, eta).holds) ++l1_fail;
    }

    int l2_fail = 0;
    int l2_tested = 0;
    while (l2_tested < 500) {
        const double x = stream.next_uniform(0.5, 6.0);
        const double rate = stream.next_uniform(0.1, 2.0);
        const double kx = stream.next_uniform(0.5, 2.5);
        const bool exp_f = (stream.next_u64() & 1) != 0;
        auto f = [=](double z) {
            return exp_f ? std::exp(-rate * z) : refine::poisson_kernel(kx, z);
        };
        const int terms = 1 + static_cast<int>(stream.next_u64() % 5);
        std::vector<double> c(terms), w(terms), ph(terms);
        for (int j = 0; j < terms; ++j) {
            c[j] = stream.next_uniform(-1.0, 1.0);
            w[j] = stream.next_uniform(0.5, 6.0);
            ph[j] = stream.next_uniform(0.0, 6.28);
        }
        auto g = [=](double z) {
            double s = 0.0;
            for (int j = 0; j < terms; ++j) s += c[j] * std::cos(w[j] * z + ph[j]);
            return s;
        };
        const auto rep = refine::monotone_rearrangement_check(f, g, x);
        if (!rep.precondition_ok) continue;
        ++l2_tested;
        if (!rep.holds) ++l2_fail;
    }
    const double dt = seconds_since(t0);
    std::ostringstream os;
    os << "window-average failures " << l1_fail << ", rearrangement failures " << l2_fail << ", " << dt << " s";
    detail = os.str();
    return l1_fail == 0 && l2_fail == 0 && dt < 60.0;
}

// 10. Corollaries 1-3.
bool criterion_corollaries(std::string& detail) {
    rng::Stream stream(20240609);
    std::vector<double> grid;
    for (int i = 1; i <= 9; ++i) grid.push_back(0.1 * i);

    int transfer_fail = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        const auto synth = fuzz::synthesize_equality_instance(
            n, std::exp(stream.next_uniform(-0.5, 0.5)), stream.next_u64());
        const auto rep = equality::equality_transfer_check(synth.inst, synth.v, grid, 1e-9);
        if (!(rep.precondition_met && rep.max_deviation <= 1e-8)) ++transfer_fail;
    }

    int chain_fail = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(stream.next_u64() % 3);
        const auto inst = random_normalized(stream, n);
        const Vec v = random_unit(stream, n);
        if (!strip::corollary3_bounds(inst, v, inst.r).chain_holds) ++chain_fail;
    }
    std::ostringstream os;
    os << "transfer failures " << transfer_fail << ", chain failures " << chain_fail;
    detail = os.str();
    return transfer_fail == 0 && chain_fail == 0;
}

// 11. The approximation explorer.
bool criterion_explorer(std::string& detail) {
    double worst_pairing = 0.0;
    for (int i = 1; i <= 9; ++i) {
        approx::ApproxInstance one;
        one.a = {0.0};
        one.b = {0.0};
        one.C = Matrix(1, 1);
        one.C(0, 0) = 1.0;
        one.r = 0.1 * i;
        worst_pairing = std::max(worst_pairing, std::abs(approx::pairing(one).value - 1.0));
    }

    const approx::ClassConstraint cons{approx::ClassConstraint::Kind::H, 1.0};
    const auto s1 = approx::search_sup(2, cons, 0.5, 20000, 20240610);
    const auto s2 = approx::search_sup(2, cons, 0.5, 20000, 20240610);
    const double cap = 1.0 - refine::certified_improvement(2, 0.5, 2.0).c_cert;
    const bool in_range = s1.best_value > 0.0 && s1.best_value <= cap + 1e-6;
    const bool deterministic = s1.best_value == s2.best_value;

    std::ostringstream os;
    os << "pairing err " << worst_pairing << ", best " << s1.best_value << " vs cap " << cap
       << (deterministic ? ", deterministic" : ", NONDETERMINISTIC");
    detail = os.str();
    return worst_pairing <= 1e-6 && in_range && deterministic;
}

// 12. Byte-identical fuzz reproducibility.
bool criterion_reproducibility(std::string& detail, const std::string& cli_path) {
    namespace fs = std::filesystem;
    fuzz::FuzzConfig cfg;
    cfg.trials = 25;
    cfg.seed = 424242;
    cfg.n_max = 4;

    if (!cli_path.empty()) {
        const fs::path dir = fs::temp_directory_path() / "opnorm_accept";
        fs::create_directories(dir);
        const std::string config = (dir / "config.json").string();
        io::write_file(config, io::config_json(cfg).dump(2) + "\n");
        // identical invocations, including the output path, must reproduce
        // identical bytes
        const std::string out_csv = (dir / "campaign.csv").string();
        const std::string out_json = (dir / "report.json").string();
        std::string csv[2], rep[2];
        for (int run = 0; run < 2; ++run) {
            const std::string cmd = "\"" + cli_path + "\" fuzz --config \"" + config +
                                    "\" --out \"" + out_csv + "\" > \"" + out_json + "\"";
            if (std::system(cmd.c_str()) != 0) {
                detail = "cli invocation failed";
                return false;
            }
            csv[run] = io::read_file(out_csv);
            rep[run] = io::read_file(out_json);
        }
        detail = "cli double-run over " + std::to_string(cfg.trials) + " trials";
        return csv[0] == csv[1] && rep[0] == rep[1] && !csv[0].empty();
    }

    const auto r1 = fuzz::run_campaign(cfg);
    const auto r2 = fuzz::run_campaign(cfg);
    const bool same_csv = io::campaign_csv(r1) == io::campaign_csv(r2);
    const bool same_json = io::campaign_summary_json(r1).dump() == io::campaign_summary_json(r2).dump();
    detail = "in-process double run";
    return same_csv && same_json;
}

} // namespace

int run_all(std::ostream& out, const std::string& cli_path) {
    Criterion c;
    std::string detail;

    bool ok = criterion_worked_example(detail);
    c.report(out, 1, "worked 2x2 diagonal example", ok, detail);

    bool campaigns_sound = false;
    ok = criterion_fuzzing(detail, campaigns_sound);
    c.report(out, 2, "inequality fuzzing (1000+1000+500 trials)", ok, detail);

    ok = criterion_unitarity(detail);
    c.report(out, 3, "unitarity of A^{it}", ok, detail);

    std::string d4, d5;
    bool bound_ok = false;
    ok = criterion_expansion_and_bounds(d4, d5, bound_ok);
    c.report(out, 4, "boundary expansion identity", ok, d4);
    c.report(out, 5, "boundary and interior modulus bound", bound_ok, d5);

    ok = criterion_poisson(detail);
    c.report(out, 6, "Poisson kernel mass and reconstruction", ok, detail);

    ok = criterion_theorem1(detail);
    c.report(out, 7, "equality characterization at desk scale", ok, detail);

    ok = criterion_certificate(detail, campaigns_sound);
    c.report(out, 8, "certificate soundness, positivity, monotonicity", ok, detail);

    ok = criterion_integral_bounds(detail);
    c.report(out, 9, "window-average and rearrangement integral bounds", ok, detail);

    ok = criterion_corollaries(detail);
    c.report(out, 10, "equality transfer and two-sided bound", ok, detail);

    ok = criterion_explorer(detail);
    c.report(out, 11, "approximation explorer", ok, detail);

    ok = criterion_reproducibility(detail, cli_path);
    c.report(out, 12, "byte-identical campaign reproduction", ok, detail);

    out << (c.failures == 0 ? "acceptance: all criteria passed\n"
                            : "acceptance: " + std::to_string(c.failures) + " criteria FAILED\n");
    return c.failures;
}

} // namespace opnorm::accept

// opnorm: evaluate, certify and refine operator-norm inequalities for
// symmetric positive-definite matrices.
//
// Exit codes: 0 success, 1 input error, 2 mathematical-soundness failure
// (an evaluated inequality or certificate violated its tolerance, which
// signals a bug in the library rather than bad input).

#include "opnorm/acceptance.hpp"
#include "opnorm/approx.hpp"
#include "opnorm/equality.hpp"
#include "opnorm/fuzz.hpp"
#include "opnorm/inequalities.hpp"
#include "opnorm/io.hpp"
#include "opnorm/refinement.hpp"
#include "opnorm/strip.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

namespace {

using opnorm::io::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSoundness = 2;

std::uint64_t effective_seed(std::uint64_t cli_seed) {
    if (const char* env = std::getenv("OPNORM_SEED")) {
        return std::strtoull(env, nullptr, 10);
    }
    return cli_seed;
}

struct CheckArgs {
    std::string file_a, file_x, file_b;
    std::string ineq = "mcintosh";
    double r = 0.5;
    double s = 0.5;
    double alpha = 0.5;
    double tol = 1e-9; // violation threshold on the ratio
    std::string file_t, file_x_vec, file_y_vec;
};

int cmd_check(const CheckArgs& args) {
    const opnorm::SymMatrix a = opnorm::io::load_sym_matrix(args.file_a);
    const opnorm::Matrix x = opnorm::io::load_matrix(args.file_x);
    const opnorm::SymMatrix b = opnorm::io::load_sym_matrix(args.file_b);
    const std::string digest =
        opnorm::io::digest_files({args.file_a, args.file_x, args.file_b});

    json params;
    params["ineq"] = args.ineq;
    params["tol"] = args.tol;
    json results;
    bool violated = false;

    if (args.ineq == "mcintosh") {
        params["r"] = args.r;
        const auto rep = opnorm::ineq::evaluate_mcintosh({a, x, b, args.r, false});
        violated = !rep.trivial && !(rep.ratio <= 1.0 + args.tol);
        results = opnorm::io::report_json(rep);
    } else if (args.ineq == "cordes") {
        params["s"] = args.s;
        const auto rep = opnorm::ineq::evaluate_cordes({a, b, args.s, false});
        violated = !rep.trivial && !(rep.ratio <= 1.0 + args.tol);
        results = opnorm::io::report_json(rep);
    } else if (args.ineq == "fujii") {
        const auto rep = opnorm::ineq::evaluate_fujii_furuta(a, x, b);
        violated = !rep.trivial && !(rep.ratio <= 1.0 + args.tol);
        results = opnorm::io::report_json(rep);
    } else if (args.ineq == "heinz-kato") {
        params["alpha"] = args.alpha;
        if (args.file_t.empty() || args.file_x_vec.empty() || args.file_y_vec.empty())
            throw std::runtime_error("heinz-kato needs --T, --x and --y");
        const opnorm::Matrix t = opnorm::io::load_matrix(args.file_t);
        const opnorm::Vec xv = opnorm::io::load_vector(args.file_x_vec);
        const opnorm::Vec yv = opnorm::io::load_vector(args.file_y_vec);
        const auto rep = opnorm::ineq::evaluate_heinz_kato(t, a, b, args.alpha, xv, yv);
        violated = !rep.hypotheses_unmet && !rep.trivial && !(rep.ratio <= 1.0 + args.tol);
        results = opnorm::io::report_json(rep);
    } else if (args.ineq == "loewner-heinz") {
        params["alpha"] = args.alpha;
        const auto rep = opnorm::ineq::evaluate_loewner_heinz(a, b, args.alpha);
        violated = rep.hypothesis_ok && !rep.holds;
        results = opnorm::io::report_json(rep);
    } else {
        throw std::runtime_error("unknown inequality: " + args.ineq);
    }

    std::cout << opnorm::io::run_report("check", params, digest, 0, results).dump(2) << "\n";
    return violated ? kExitSoundness : kExitOk;
}

int cmd_refine(const std::string& fa, const std::string& fx, const std::string& fb,
               const std::string& ineq, double r, const std::string& side, double tol) {
    const opnorm::SymMatrix a = opnorm::io::load_sym_matrix(fa);
    const opnorm::SymMatrix b = opnorm::io::load_sym_matrix(fb);
    std::optional<opnorm::refine::StripSide> hint;
    if (side == "left") hint = opnorm::refine::StripSide::Left;
    else if (side == "right") hint = opnorm::refine::StripSide::Right;
    else if (side != "auto") throw std::runtime_error("--side must be auto, left or right");

    opnorm::refine::RefinedReport rep;
    std::string digest;
    if (ineq == "mcintosh") {
        const opnorm::Matrix x = opnorm::io::load_matrix(fx);
        digest = opnorm::io::digest_files({fa, fx, fb});
        rep = opnorm::refine::refined_mcintosh({a, x, b, r, false}, hint);
    } else if (ineq == "cordes") {
        digest = opnorm::io::digest_files({fa, fb});
        rep = opnorm::refine::refined_cordes({a, b, r, false}, hint);
    } else {
        throw std::runtime_error("refine supports --ineq mcintosh|cordes");
    }

    json params;
    params["ineq"] = ineq;
    params["r"] = r;
    params["side"] = side;
    params["tol"] = tol;
    json results = opnorm::io::report_json(rep);
    if (!rep.certificate) results["note"] = rep.d_available ? "no certificate (d = 0)" : rep.note;
    std::cout << opnorm::io::run_report("refine", params, digest, 0, results).dump(2) << "\n";
    const bool sound = !rep.certificate || rep.plain.ratio <= 1.0 - rep.bound.c_cert + tol;
    return sound ? kExitOk : kExitSoundness;
}

int cmd_equality(const std::string& fa, const std::string& fx, const std::string& fb,
                 double r, const std::string& fv, double tol) {
    const opnorm::SymMatrix a = opnorm::io::load_sym_matrix(fa);
    const opnorm::Matrix x = opnorm::io::load_matrix(fx);
    const opnorm::SymMatrix b = opnorm::io::load_sym_matrix(fb);
    const std::string digest = opnorm::io::digest_files({fa, fx, fb});

    const auto norm = opnorm::ineq::normalize({a, x, b, r, false});
    opnorm::Vec v;
    if (fv.empty()) {
        v = opnorm::equality::extremal_vector(norm, r);
    } else {
        v = opnorm::io::load_vector(fv);
        const double nv = opnorm::norm2(v);
        if (nv <= 0.0) throw std::runtime_error("--v: zero vector");
        opnorm::scale_in_place(v, 1.0 / nv);
    }
    const auto verdict = opnorm::equality::analyze_mcintosh_equality(norm, v, tol);

    json params;
    params["r"] = r;
    params["v"] = fv.empty() ? "extremal" : fv;
    params["tol"] = tol;
    json results = opnorm::io::report_json(verdict);
    results["v_used"] = v;
    std::cout << opnorm::io::run_report("equality", params, digest, 0, results).dump(2) << "\n";
    return kExitOk;
}

int cmd_strip(const std::string& fa, const std::string& fx, const std::string& fb,
              double r, const std::string& grid_spec, double tmax,
              const std::string& out_csv, const std::string& fv) {
    const opnorm::SymMatrix a = opnorm::io::load_sym_matrix(fa);
    const opnorm::Matrix x = opnorm::io::load_matrix(fx);
    const opnorm::SymMatrix b = opnorm::io::load_sym_matrix(fb);
    const std::string digest = opnorm::io::digest_files({fa, fx, fb});

    int nx = 21, nt = 161;
    if (!grid_spec.empty()) {
        if (std::sscanf(grid_spec.c_str(), "%d,%d", &nx, &nt) != 2 || nx < 2 || nt < 2)
            throw std::runtime_error("--grid expects nx,nt with nx,nt >= 2");
    }

    const auto norm = opnorm::ineq::normalize({a, x, b, r, false});
    opnorm::Vec v;
    if (fv.empty()) {
        v = opnorm::equality::extremal_vector(norm, r);
    } else {
        v = opnorm::io::load_vector(fv);
        opnorm::scale_in_place(v, 1.0 / opnorm::norm2(v));
    }
    const auto F = opnorm::strip::StripFunction::mcintosh(norm, v);
    const auto grid = opnorm::strip::eval_grid(F, nx, nt, tmax);
    opnorm::io::write_file(out_csv, opnorm::io::grid_csv(grid));

    json params;
    params["r"] = r;
    params["grid"] = std::to_string(nx) + "," + std::to_string(nt);
    params["tmax"] = tmax;
    params["out"] = out_csv;
    json results;
    results["boundary_max"] = grid.boundary_max;
    results["interior_max"] = grid.interior_max;
    results["rows"] = static_cast<long>(grid.values.size());
    std::cout << opnorm::io::run_report("strip", params, digest, 0, results).dump(2) << "\n";
    return kExitOk;
}

int cmd_approx(int n, const std::string& klass, double delta, double r, long budget,
               std::uint64_t seed, const std::string& out_csv) {
    opnorm::approx::ClassConstraint cons;
    if (klass == "H") cons.kind = opnorm::approx::ClassConstraint::Kind::H;
    else if (klass == "G") cons.kind = opnorm::approx::ClassConstraint::Kind::G;
    else throw std::runtime_error("--class must be H or G");
    cons.delta = delta;

    const auto rep = opnorm::approx::search_sup(n, cons, r, budget, seed);
    if (!out_csv.empty()) opnorm::io::write_file(out_csv, opnorm::io::history_csv(rep.history));

    json params;
    params["n"] = n;
    params["class"] = klass;
    params["delta"] = delta;
    params["r"] = r;
    params["budget"] = budget;
    json results = opnorm::io::report_json(rep, out_csv.empty());
    if (!rep.feasible) results["note"] = "constraint infeasible for the given n";
    std::cout << opnorm::io::run_report("approx", params, "", seed, results).dump(2) << "\n";
    return kExitOk;
}

int cmd_fuzz(const std::string& config_path, const std::string& out_csv, int jobs_override) {
    const json cfg_json = json::parse(opnorm::io::read_file(config_path));
    opnorm::fuzz::FuzzConfig cfg = opnorm::io::parse_fuzz_config(cfg_json);
    if (jobs_override > 0) cfg.jobs = jobs_override;
    if (const char* env = std::getenv("OPNORM_SEED")) cfg.seed = std::strtoull(env, nullptr, 10);

    const auto rep = opnorm::fuzz::run_campaign(cfg);
    if (!out_csv.empty()) opnorm::io::write_file(out_csv, opnorm::io::campaign_csv(rep));

    json params;
    params["config"] = config_path;
    params["out"] = out_csv;
    const std::string digest = opnorm::io::digest_files({config_path});
    std::cout << opnorm::io::run_report("fuzz", params, digest, cfg.seed,
                                        opnorm::io::campaign_summary_json(rep))
                     .dump(2)
              << "\n";
    return rep.violations == 0 ? kExitOk : kExitSoundness;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"opnorm: operator-norm inequality toolkit"};
    app.require_subcommand(1);

    CheckArgs check_args;
    auto* check = app.add_subcommand("check", "Evaluate one inequality on matrix files");
    check->add_option("A", check_args.file_a, "A matrix JSON")->required();
    check->add_option("X", check_args.file_x, "X matrix JSON")->required();
    check->add_option("B", check_args.file_b, "B matrix JSON")->required();
    check->add_option("--ineq", check_args.ineq,
                      "mcintosh|cordes|fujii|heinz-kato|loewner-heinz");
    check->add_option("--r", check_args.r, "exponent r in [0,1]");
    check->add_option("--s", check_args.s, "exponent s in [0,1]");
    check->add_option("--alpha", check_args.alpha, "exponent alpha in [0,1]");
    check->add_option("--tol", check_args.tol, "violation threshold on the ratio");
    check->add_option("--T", check_args.file_t, "T matrix JSON (heinz-kato)");
    check->add_option("--x", check_args.file_x_vec, "x vector JSON (heinz-kato)");
    check->add_option("--y", check_args.file_y_vec, "y vector JSON (heinz-kato)");

    std::string rf_a, rf_x, rf_b, rf_ineq = "mcintosh", rf_side = "auto";
    double rf_r = 0.5, rf_tol = 1e-9;
    auto* refine_cmd = app.add_subcommand("refine", "Spectral distance and certified improvement");
    refine_cmd->add_option("A", rf_a)->required();
    refine_cmd->add_option("X", rf_x)->required();
    refine_cmd->add_option("B", rf_b)->required();
    refine_cmd->add_option("--ineq", rf_ineq, "mcintosh|cordes");
    refine_cmd->add_option("--r", rf_r, "exponent in (0,1)");
    refine_cmd->add_option("--side", rf_side, "auto|left|right");
    refine_cmd->add_option("--tol", rf_tol, "soundness margin tolerance");

    std::string eq_a, eq_x, eq_b, eq_v;
    double eq_r = 0.5, eq_tol = -1.0;
    auto* eq = app.add_subcommand("equality", "Equality-characterization verdict");
    eq->add_option("A", eq_a)->required();
    eq->add_option("X", eq_x)->required();
    eq->add_option("B", eq_b)->required();
    eq->add_option("--r", eq_r);
    eq->add_option("--v", eq_v, "vector JSON (default: extremal vector)");
    eq->add_option("--tol", eq_tol, "eigenvector residual tolerance (default 1e-7 * max(1, ||A||))");

    std::string st_a, st_x, st_b, st_grid, st_out = "grid.csv", st_v;
    double st_r = 0.5, st_tmax = 40.0;
    auto* st = app.add_subcommand("strip", "Export the strip function on a grid as CSV");
    st->add_option("A", st_a)->required();
    st->add_option("X", st_x)->required();
    st->add_option("B", st_b)->required();
    st->add_option("--r", st_r);
    st->add_option("--grid", st_grid, "nx,nt (default 21,161)");
    st->add_option("--tmax", st_tmax);
    st->add_option("--out", st_out, "output CSV path");
    st->add_option("--v", st_v, "vector JSON (default: extremal vector)");

    int ap_n = 2;
    std::string ap_class = "H", ap_out;
    double ap_delta = 1.0, ap_r = 0.5;
    long ap_budget = 20000;
    std::uint64_t ap_seed = 1;
    auto* ap = app.add_subcommand("approx", "Search the structured approximation classes");
    ap->add_option("--n", ap_n);
    ap->add_option("--class", ap_class, "H|G");
    ap->add_option("--delta", ap_delta);
    ap->add_option("--r", ap_r);
    ap->add_option("--budget", ap_budget);
    ap->add_option("--seed", ap_seed);
    ap->add_option("--out", ap_out, "history CSV path");

    std::string fz_config, fz_out = "campaign.csv";
    int fz_jobs = 0;
    auto* fz = app.add_subcommand("fuzz", "Run a randomized campaign from a config file");
    fz->add_option("--config", fz_config)->required();
    fz->add_option("--out", fz_out, "campaign CSV path");
    fz->add_option("--jobs", fz_jobs, "parallel workers (0 = config value)");

    auto* self = app.add_subcommand("selftest", "Run the embedded acceptance suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? kExitOk : kExitInput;
    }

    try {
        if (check->parsed()) return cmd_check(check_args);
        if (refine_cmd->parsed())
            return cmd_refine(rf_a, rf_x, rf_b, rf_ineq, rf_r, rf_side, rf_tol);
        if (eq->parsed()) return cmd_equality(eq_a, eq_x, eq_b, eq_r, eq_v, eq_tol);
        if (st->parsed()) return cmd_strip(st_a, st_x, st_b, st_r, st_grid, st_tmax, st_out, st_v);
        if (ap->parsed())
            return cmd_approx(ap_n, ap_class, ap_delta, ap_r, ap_budget,
                              effective_seed(ap_seed), ap_out);
        if (fz->parsed()) return cmd_fuzz(fz_config, fz_out, fz_jobs);
        if (self->parsed()) return opnorm::accept::run_all(std::cout, argv[0]) == 0 ? kExitOk : kExitSoundness;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}

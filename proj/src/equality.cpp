#include "opnorm/equality.hpp"

#include <cmath>
#include <stdexcept>

namespace opnorm::equality {

namespace {

using spectral::eigendecompose;
using spectral::SpectralDecomposition;

void require_unit(const Vec& v, const char* who) {
    if (std::abs(norm2(v) - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(who) + ": v must be a unit vector");
}

double operator_value(const ineq::McIntoshInstance& inst, double e, const Vec& v) {
    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    const Vec u = spectral::real_power(db, 1.0 - e) * v;
    return norm2(spectral::real_power(da, e) * (inst.X * u));
}

double operator_value(const ineq::CordesInstance& inst, double e, const Vec& v) {
    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    return norm2(spectral::real_power(da, e) * (spectral::real_power(db, e) * v));
}

// Shared cluster walk; target(mu) is the eigenvalue w must achieve under A.
template <class Target, class Image>
EqualityVerdict analyze(const SpectralDecomposition& da, const SpectralDecomposition& db,
                        double x_norm, double a_norm, double tol,
                        Target target, Image image) {
    EqualityVerdict verdict;
    const double tol_eff = tol > 0.0 ? tol : 1e-7 * std::max(1.0, a_norm);
    const double visible = 1e-9 * std::max(x_norm, 1e-300);

    bool all_pass = true;
    bool any_visible = false;
    for (std::size_t c = 0; c < db.clusters.size(); ++c) {
        ClusterRecord rec;
        rec.mu = db.clusters[c].rep;
        const Vec w = image(static_cast<int>(c));
        rec.proj_norm = norm2(w);
        if (rec.proj_norm > visible) {
            rec.tested = true;
            any_visible = true;
            Vec Aw(w.size(), 0.0);
            for (int k = 0; k < da.n; ++k) {
                double coeff = 0.0;
                for (int i = 0; i < da.n; ++i) coeff += w[i] * da.Q(i, k);
                coeff *= da.eigenvalues[k];
                for (int i = 0; i < da.n; ++i) Aw[i] += coeff * da.Q(i, k);
            }
            const double t = target(rec.mu);
            Vec resid(w.size());
            for (std::size_t i = 0; i < w.size(); ++i) resid[i] = Aw[i] - t * w[i];
            rec.residual = norm2(resid) / rec.proj_norm;
            rec.achieved_eigenvalue = dot(w, Aw) / (rec.proj_norm * rec.proj_norm);
            rec.is_eigvec = rec.residual <= tol_eff;
            if (!rec.is_eigvec) all_pass = false;
        }
        verdict.clusters.push_back(rec);
    }
    verdict.consistent = any_visible && all_pass;
    return verdict;
}

} // namespace

std::vector<CommonEigenvalue> find_common_eigenvalues(const SpectralDecomposition& DA,
                                                      const SpectralDecomposition& DB,
                                                      double tol) {
    std::vector<CommonEigenvalue> out;
    for (const auto& ca : DA.clusters)
        for (const auto& cb : DB.clusters) {
            const double gap = std::abs(ca.rep - cb.rep);
            if (gap <= tol * std::max({1.0, std::abs(ca.rep), std::abs(cb.rep)}))
                out.push_back({ca.rep, cb.rep, gap});
        }
    return out;
}

EqualityVerdict analyze_mcintosh_equality(const ineq::McIntoshInstance& inst,
                                          const Vec& v, double tol) {
    if (!inst.normalized)
        throw std::invalid_argument("analyze_mcintosh_equality: instance must be normalized");
    require_unit(v, "analyze_mcintosh_equality");

    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    const double x_norm = spectral::operator_norm_value(inst.X);

    EqualityVerdict verdict = analyze(
        da, db, x_norm, da.source_norm, tol,
        [](double mu) { return mu; },
        [&](int c) { return inst.X * spectral::project_cluster(db, c, v); });

    verdict.common_eigenvalues = find_common_eigenvalues(da, db);
    verdict.achieved = operator_value(inst, inst.r, v);
    verdict.asserted = verdict.achieved >= 1.0 - 1e-8;
    return verdict;
}

EqualityVerdict analyze_cordes_equality(const ineq::CordesInstance& inst,
                                        const Vec& v, double tol) {
    if (!inst.normalized)
        throw std::invalid_argument("analyze_cordes_equality: instance must be normalized");
    require_unit(v, "analyze_cordes_equality");

    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    if (spectral::check_spd(db) != spectral::SpdStatus::Spd)
        throw std::domain_error("analyze_cordes_equality: B must be strictly positive (1/mu)");

    EqualityVerdict verdict = analyze(
        da, db, 1.0, da.source_norm, tol,
        [](double mu) { return 1.0 / mu; },
        [&](int c) { return spectral::project_cluster(db, c, v); });

    // For Cordes the matching condition is lambda = 1/mu.
    std::vector<CommonEigenvalue> matches;
    for (const auto& ca : da.clusters)
        for (const auto& cb : db.clusters) {
            const double gap = std::abs(ca.rep - 1.0 / cb.rep);
            if (gap <= 1e-8 * std::max({1.0, std::abs(ca.rep), 1.0 / cb.rep}))
                matches.push_back({ca.rep, cb.rep, gap});
        }
    verdict.common_eigenvalues = std::move(matches);
    verdict.achieved = operator_value(inst, inst.s, v);
    verdict.asserted = verdict.achieved >= 1.0 - 1e-8;
    return verdict;
}

namespace {

template <class Inst>
TransferReport transfer(const Inst& inst, const Vec& v, double at,
                        const std::vector<double>& grid, double tol) {
    TransferReport rep;
    rep.value_at_r = operator_value(inst, at, v);
    rep.precondition_met = std::abs(rep.value_at_r - 1.0) <= tol;
    if (!rep.precondition_met) return rep;

    rep.all_one = true;
    for (double s : grid) {
        const double val = operator_value(inst, s, v);
        rep.values.emplace_back(s, val);
        rep.max_deviation = std::max(rep.max_deviation, std::abs(val - 1.0));
    }
    rep.all_one = rep.max_deviation <= 10.0 * tol;
    return rep;
}

} // namespace

TransferReport equality_transfer_check(const ineq::McIntoshInstance& inst, const Vec& v,
                                       const std::vector<double>& exponent_grid, double tol) {
    if (!inst.normalized)
        throw std::invalid_argument("equality_transfer_check: instance must be normalized");
    require_unit(v, "equality_transfer_check");
    return transfer(inst, v, inst.r, exponent_grid, tol);
}

TransferReport equality_transfer_check(const ineq::CordesInstance& inst, const Vec& v,
                                       const std::vector<double>& exponent_grid, double tol) {
    if (!inst.normalized)
        throw std::invalid_argument("equality_transfer_check: instance must be normalized");
    require_unit(v, "equality_transfer_check");
    return transfer(inst, v, inst.s, exponent_grid, tol);
}

Vec extremal_vector(const ineq::McIntoshInstance& inst, double exponent) {
    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    const Matrix op = spectral::real_power(da, exponent).full() * inst.X *
                      spectral::real_power(db, 1.0 - exponent).full();
    return spectral::operator_norm(op).witness;
}

Vec extremal_vector(const ineq::CordesInstance& inst, double exponent) {
    const auto da = eigendecompose(inst.A);
    const auto db = eigendecompose(inst.B);
    const Matrix op = spectral::real_power(da, exponent).full() *
                      spectral::real_power(db, exponent).full();
    return spectral::operator_norm(op).witness;
}

} // namespace opnorm::equality

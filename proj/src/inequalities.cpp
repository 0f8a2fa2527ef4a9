#include "opnorm/inequalities.hpp"

#include "opnorm/rng.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace opnorm::ineq {

namespace {

using spectral::eigendecompose;
using spectral::operator_norm;
using spectral::real_power;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

InequalityReport make_report(std::string name, double lhs, double rhs, Vec witness) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.slack = rhs - lhs;
    rep.witness = std::move(witness);
    if (rhs > 0.0) {
        rep.ratio = lhs / rhs;
    } else {
        rep.ratio = kNaN;
        rep.trivial = true;
    }
    return rep;
}

// A^p as a matrix; p in {0,1} avoids the spectral calculus so that
// psd-only inputs pass through the trivial endpoints.
Matrix sym_power(const SymMatrix& M, double p) {
    if (p == 1.0) return M.full();
    if (p == 0.0) return Matrix::identity(M.n());
    return real_power(eigendecompose(M), p).full();
}

} // namespace

McIntoshInstance normalize(const McIntoshInstance& inst) {
    const double nax = spectral::operator_norm_value(inst.A * inst.X);
    const double nxb = spectral::operator_norm_value(inst.X * inst.B);
    if (nax <= 0.0 || nxb <= 0.0)
        throw std::domain_error("normalize: degenerate instance, ||AX|| or ||XB|| is zero");
    McIntoshInstance out = inst;
    out.A = (1.0 / nax) * inst.A;
    out.B = (1.0 / nxb) * inst.B;
    out.normalized = true;
    return out;
}

CordesInstance normalize(const CordesInstance& inst) {
    const double nab = spectral::operator_norm_value(inst.A * inst.B);
    if (nab <= 0.0)
        throw std::domain_error("normalize: degenerate instance, ||AB|| is zero");
    const double c = 1.0 / std::sqrt(nab);
    CordesInstance out = inst;
    out.A = c * inst.A;
    out.B = c * inst.B;
    out.normalized = true;
    return out;
}

InequalityReport evaluate_mcintosh(const McIntoshInstance& inst) {
    if (inst.r < 0.0 || inst.r > 1.0)
        throw std::invalid_argument("evaluate_mcintosh: r outside [0,1]");
    const Matrix op = sym_power(inst.A, inst.r) * inst.X * sym_power(inst.B, 1.0 - inst.r);
    const auto lhs = operator_norm(op);
    const double rhs = std::pow(spectral::operator_norm_value(inst.A * inst.X), inst.r) *
                       std::pow(spectral::operator_norm_value(inst.X * inst.B), 1.0 - inst.r);
    return make_report("mcintosh", lhs.value, rhs, lhs.witness);
}

InequalityReport evaluate_cordes(const CordesInstance& inst) {
    if (inst.s < 0.0 || inst.s > 1.0)
        throw std::invalid_argument("evaluate_cordes: s outside [0,1]");
    const Matrix op = sym_power(inst.A, inst.s) * sym_power(inst.B, inst.s);
    const auto lhs = operator_norm(op);
    const double rhs = std::pow(spectral::operator_norm_value(inst.A * inst.B), inst.s);
    return make_report("cordes", lhs.value, rhs, lhs.witness);
}

InequalityReport evaluate_fujii_furuta(const SymMatrix& A, const Matrix& X, const SymMatrix& B) {
    McIntoshInstance relabeled;
    relabeled.A = SymMatrix::from(A * A, 1e-12);
    relabeled.X = X;
    relabeled.B = SymMatrix::from(B * B, 1e-12);
    relabeled.r = 0.5;
    InequalityReport rep = evaluate_mcintosh(relabeled);
    rep.name = "fujii-furuta";
    return rep;
}

InequalityReport evaluate_heinz_kato(const Matrix& T, const SymMatrix& A, const SymMatrix& B,
                                     double alpha, const Vec& x, const Vec& y) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("evaluate_heinz_kato: alpha outside [0,1]");
    const int n = A.n();
    if (T.rows() != n || T.cols() != n || B.n() != n ||
        static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw std::invalid_argument("evaluate_heinz_kato: dimension mismatch");

    const Matrix Tt = transpose(T);
    const double probe_tol = 1e-9 * (1.0 + spectral::operator_norm_value(T) +
                                     spectral::operator_norm_value(A.full()) +
                                     spectral::operator_norm_value(B.full()));

    // Fast pre-filter on x, y and 100 seeded unit probes; the exact block
    // criterion below is authoritative.
    bool probes_ok = true;
    rng::Stream stream(0x48656ECBA7ULL);
    auto probe = [&](const Vec& v, bool adjoint) {
        const double tn = norm2(adjoint ? (Tt * v) : (T * v));
        const double an = norm2(adjoint ? (B * v) : (A * v));
        return tn <= an + probe_tol;
    };
    probes_ok = probe(x, false) && probe(y, true);
    for (int trial = 0; probes_ok && trial < 100; ++trial) {
        Vec v(n);
        for (double& c : v) c = stream.next_gaussian();
        const double nv = norm2(v);
        if (nv == 0.0) continue;
        scale_in_place(v, 1.0 / nv);
        probes_ok = probe(v, false) && probe(v, true);
    }

    bool exact_ok = false;
    if (probes_ok) {
        const SymMatrix a2mt = SymMatrix::from(A * A - Tt * T, 1e-9);
        const SymMatrix b2mt = SymMatrix::from(B * B - T * Tt, 1e-9);
        const SymMatrix zero(n);
        exact_ok = spectral::psd_order(a2mt, zero, probe_tol) &&
                   spectral::psd_order(b2mt, zero, probe_tol);
    }

    double lhs = 0.0;
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += T(i, j) * x[j];
        lhs += s * y[i];
    }
    lhs = std::abs(lhs);
    const double rhs = norm2(real_power(eigendecompose(A), alpha) * x) *
                       norm2(real_power(eigendecompose(B), 1.0 - alpha) * y);

    InequalityReport rep = make_report("heinz-kato", lhs, rhs, {});
    rep.hypotheses_unmet = !exact_ok;
    return rep;
}

OrderReport evaluate_loewner_heinz(const SymMatrix& A, const SymMatrix& B, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("evaluate_loewner_heinz: alpha outside [0,1]");
    if (A.n() != B.n())
        throw std::invalid_argument("evaluate_loewner_heinz: dimension mismatch");

    OrderReport rep;
    const auto da = eigendecompose(A);
    const auto db = eigendecompose(B);
    const double scale = std::max(1.0, std::max(da.source_norm, db.source_norm));
    const bool b_psd = db.min_eigenvalue() >= -1e-10 * scale;
    rep.hypothesis_ok = b_psd && spectral::psd_order(A, B, 1e-10 * scale);
    if (!rep.hypothesis_ok) return rep;

    if (alpha == 0.0) { // A^0 = B^0 = I
        rep.holds = true;
        return rep;
    }
    const SymMatrix apow = real_power(da, alpha);
    const SymMatrix bpow = real_power(db, alpha);
    const auto diff = eigendecompose(apow - bpow);
    rep.min_eigenvalue_diff = diff.min_eigenvalue();
    rep.holds = rep.min_eigenvalue_diff >= -1e-8 * std::max(1.0, scale);
    return rep;
}

} // namespace opnorm::ineq

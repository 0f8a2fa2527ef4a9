#include "opnorm/refinement.hpp"

#include "opnorm/quad.hpp"
#include "opnorm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace opnorm::refine {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kYMax = 50.0; // quadrature guard for the window ordinate, in units of ell

std::vector<double> logs_of(const std::vector<double>& spectrum, const char* who) {
    std::vector<double> l(spectrum.size());
    for (std::size_t i = 0; i < spectrum.size(); ++i) {
        if (!(spectrum[i] > 0.0))
            throw std::domain_error(std::string(who) + ": spectrum entries must be strictly positive");
        l[i] = std::log(spectrum[i]);
    }
    return l;
}

spectral::SpectralDecomposition strict_spd_decomposition(const SymMatrix& m, const char* who) {
    auto d = spectral::eigendecompose(m);
    if (spectral::check_spd(d) != spectral::SpdStatus::Spd)
        throw std::domain_error(std::string(who) + ": psd-only matrix, spectral distance needs log of the spectrum");
    return d;
}

} // namespace

SpectralGap compute_d(const std::vector<double>& spectrumA,
                      const std::vector<double>& spectrumB, SignMode mode) {
    const auto la = logs_of(spectrumA, "compute_d");
    const auto lb = logs_of(spectrumB, "compute_d");
    const double sign = (mode == SignMode::McIntosh) ? -1.0 : 1.0;
    const int na = static_cast<int>(la.size());
    const int nb = static_cast<int>(lb.size());

    SpectralGap g;
    g.mode = mode;
    g.term1 = std::numeric_limits<double>::infinity();
    g.term2 = std::numeric_limits<double>::infinity();

    // term1: | log l_i + log l_j -+ 2 log m_k |
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k) {
                const double v = std::abs(la[i] + la[j] + sign * 2.0 * lb[k]);
                if (v < g.term1) {
                    g.term1 = v;
                    g.witness1 = {i, j, k};
                }
            }
    // term2: | 2 log l_i -+ (log m_j + log m_k) |
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j)
            for (int k = 0; k < nb; ++k) {
                const double v = std::abs(2.0 * la[i] + sign * (lb[j] + lb[k]));
                if (v < g.term2) {
                    g.term2 = v;
                    g.witness2 = {i, j, k};
                }
            }
    g.d = g.term1 + g.term2;
    return g;
}

SpectralGap compute_d(const ineq::McIntoshInstance& inst) {
    if (!inst.normalized)
        throw std::invalid_argument("compute_d: instance must be normalized (||AX|| = 1 = ||XB||)");
    const auto da = strict_spd_decomposition(inst.A, "compute_d");
    const auto db = strict_spd_decomposition(inst.B, "compute_d");
    return compute_d(da.eigenvalues, db.eigenvalues, SignMode::McIntosh);
}

SpectralGap compute_d(const ineq::CordesInstance& inst) {
    if (!inst.normalized)
        throw std::invalid_argument("compute_d: instance must be normalized (||AB|| = 1)");
    const auto da = strict_spd_decomposition(inst.A, "compute_d");
    const auto db = strict_spd_decomposition(inst.B, "compute_d");
    return compute_d(da.eigenvalues, db.eigenvalues, SignMode::Cordes);
}

void ExponentialSum::add(double coef, double freq) {
    for (Term& t : terms) {
        if (t.freq == freq) {
            t.coef += coef;
            return;
        }
    }
    terms.push_back({coef, freq});
}

std::complex<double> ExponentialSum::eval(double t) const {
    std::complex<double> s = 0.0;
    for (const Term& term : terms)
        s += term.coef * std::complex<double>(std::cos(term.freq * t), std::sin(term.freq * t));
    return s;
}

double ExponentialSum::min_abs_freq() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Term& t : terms)
        if (t.freq != 0.0 && t.coef != 0.0) m = std::min(m, std::abs(t.freq));
    return m;
}

double ExponentialSum::sigma_lo() const {
    double m = std::numeric_limits<double>::infinity();
    for (const Term& t : terms)
        if (t.coef != 0.0) m = std::min(m, t.freq);
    return m;
}

double ExponentialSum::sigma_hi() const {
    double m = -std::numeric_limits<double>::infinity();
    for (const Term& t : terms)
        if (t.coef != 0.0) m = std::max(m, t.freq);
    return m;
}

double ExponentialSum::coef_abs_sum() const {
    double s = 0.0;
    for (const Term& t : terms) s += std::abs(t.coef);
    return s;
}

double ExponentialSum::constant_part() const {
    double s = 0.0;
    for (const Term& t : terms)
        if (t.freq == 0.0) s += t.coef;
    return s;
}

SupEstimate sup_estimate(const ExponentialSum& f, double window, int samples) {
    SupEstimate est;
    est.window = window;
    est.samples = samples;
    est.grid_spacing = samples > 1 ? 2.0 * window / (samples - 1) : 0.0;

    auto mod = [&](double t) { return std::abs(f.eval(t)); };

    // Grid scan, keeping the ten best nodes for local refinement.
    std::vector<std::pair<double, double>> top; // (value, t)
    for (int i = 0; i < samples; ++i) {
        const double t = -window + est.grid_spacing * i;
        const double v = mod(t);
        top.emplace_back(v, t);
    }
    std::partial_sort(top.begin(), top.begin() + std::min<std::size_t>(10, top.size()), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    top.resize(std::min<std::size_t>(10, top.size()));

    double best = 0.0;
    for (const auto& [v0, t0] : top) {
        double lo = t0 - est.grid_spacing;
        double hi = t0 + est.grid_spacing;
        for (int iter = 0; iter < 60; ++iter) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (mod(m1) < mod(m2))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max(best, mod(0.5 * (lo + hi)));
        best = std::max(best, v0);
    }
    est.value = best;
    return est;
}

double poisson_kernel(double x, double y) {
    if (!(x > 0.0 && x < kPi))
        throw std::domain_error("poisson_kernel: abscissa must lie in (0, pi)");
    return std::sin(x) / (std::cosh(y) - std::cos(x));
}

double poisson_kernel_mass(double x, double y0, double y1) {
    if (!(x > 0.0 && x < kPi))
        throw std::domain_error("poisson_kernel_mass: abscissa must lie in (0, pi)");
    if (y1 <= y0) return 0.0;
    // u = e^{-y}:  int P dy = 2 sin x  int du / (u^2 - 2 cos(x) u + 1).
    const double u_hi = std::exp(-y0);
    const double u_lo = std::exp(-y1);
    const double c = std::cos(x);
    auto q = [c](double u) { return u * u - 2.0 * c * u + 1.0; };
    auto integrand = [&q](double u) { return 1.0 / q(u); };
    // q attains its minimum 1 - c^2 at u = c when that lies in the range,
    // otherwise at the nearer endpoint; scale the tolerance to the peak.
    const double q_min = (c >= u_lo && c <= u_hi) ? (1.0 - c * c)
                                                  : std::min(q(u_lo), q(u_hi));
    quad::Options opt;
    opt.abs_tol = 1e-12 * std::max(u_hi - u_lo, 1e-300) / std::max(q_min, 1e-300);
    const double integral = quad::adaptive_simpson(integrand, u_lo, u_hi, opt);
    return 2.0 * std::sin(x) * integral;
}

namespace {

// Window gain I(L) = mass on [3L/4, L]; unimodal in L, so ternary search
// locates its interior maximum.
double window_gain(double x, double L) { return poisson_kernel_mass(x, 0.75 * L, L); }

double gain_peak_window(double x) {
    double lo = 1e-3, hi = 30.0;
    for (int iter = 0; iter < 90; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (window_gain(x, m1) < window_gain(x, m2))
            lo = m1;
        else
            hi = m2;
    }
    return 0.5 * (lo + hi);
}

} // namespace

CertifiedBound certified_improvement(int n, double r, double d,
                                     std::optional<StripSide> side_hint) {
    if (n < 1) throw std::invalid_argument("certified_improvement: n must be >= 1");
    if (!(r > 0.0 && r < 1.0))
        throw std::invalid_argument("certified_improvement: r must lie in (0,1)");
    if (!(d > 0.0))
        throw std::domain_error("certified_improvement: no refinement certified (d <= 0)");

    CertifiedBound b;
    b.n = n;
    b.r = r;
    b.d = d;
    b.delta = 0.5 * d;
    b.ell = 2.0 * std::sqrt(static_cast<double>(n)) / b.delta;
    b.side = side_hint.value_or(StripSide::Left);
    b.x_abscissa = (b.side == StripSide::Left) ? kPi * (1.0 - r) : kPi * r;
    b.clamped = b.ell > kYMax;

    const double L_raw = kPi * std::min(b.ell, kYMax);
    // Gap >= delta also certifies every smaller delta, i.e. every window
    // larger than ell; the monotone envelope caps the window from below at
    // the gain maximum.
    const double L_star = gain_peak_window(b.x_abscissa);
    b.plateau = L_raw < L_star;
    b.window = std::max(L_raw, L_star);

    b.poisson_gain = 2.0 * window_gain(b.x_abscissa, b.window);
    if (b.clamped)
        b.poisson_gain += 2.0 * std::sin(b.x_abscissa) * std::exp(-L_raw);
    b.c_cert = b.poisson_gain / (2.0 * (kPi - b.x_abscissa));
    return b;
}

ShapeFitReport asymptotic_shape_check(const std::vector<int>& n_grid,
                                      const std::vector<double>& d_grid, double r) {
    ShapeFitReport rep;
    for (int n : n_grid)
        for (double d : d_grid) {
            const double c = certified_improvement(n, r, d).c_cert;
            const double s = std::sqrt(static_cast<double>(n)) / d;
            rep.points.push_back({s, std::log(c), c});
        }

    if (rep.points.size() < 2) {
        rep.degenerate = true;
        return rep;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& p : rep.points) {
        sx += p[0];
        sy += p[1];
        sxx += p[0] * p[0];
        sxy += p[0] * p[1];
    }
    const double m = static_cast<double>(rep.points.size());
    const double denom = m * sxx - sx * sx;
    if (std::abs(denom) < 1e-14 * std::max(1.0, sxx * m)) {
        rep.degenerate = true;
        return rep;
    }
    rep.slope = (m * sxy - sx * sy) / denom;
    rep.intercept = (sy - rep.slope * sx) / m;
    rep.decay_positive = rep.slope < 0.0;
    rep.b = std::max(-rep.slope, 1e-12);
    rep.a = std::numeric_limits<double>::infinity();
    for (const auto& p : rep.points) rep.a = std::min(rep.a, p[1] + rep.b * p[0]);
    rep.envelope_holds = true;
    for (const auto& p : rep.points)
        if (p[1] < rep.a - rep.b * p[0] - 1e-9) rep.envelope_holds = false;
    return rep;
}

OscillationWindowReport oscillation_window_check(const ExponentialSum& sum, double eta) {
    if (!(eta > 0.0)) throw std::invalid_argument("oscillation_window_check: eta must be > 0");
    for (const auto& t : sum.terms)
        if (t.coef != 0.0 && std::abs(t.freq) < eta)
            throw std::invalid_argument("oscillation_window_check: a frequency is below eta");

    const double n = static_cast<double>(sum.terms.size());
    OscillationWindowReport rep;
    rep.half_window = 2.0 * std::sqrt(n) / eta;

    // int_{-T}^{T} c e^{i d t} dt = 2 c sin(d T) / d, exact per term.
    std::complex<double> integral = 0.0;
    for (const auto& t : sum.terms)
        integral += std::complex<double>(2.0 * t.coef * std::sin(t.freq * rep.half_window) / t.freq, 0.0);
    rep.lhs = std::abs(integral);

    const double window = std::max(rep.half_window, 200.0);
    rep.sup_estimate = sup_estimate(sum, window, 20001).value;
    rep.rhs = 0.5 * (2.0 * rep.half_window) * rep.sup_estimate;
    rep.margin = rep.rhs - rep.lhs;
    rep.holds = rep.lhs <= rep.rhs + 1e-10 * std::max(1.0, rep.rhs);
    return rep;
}

MonotoneRearrangementReport monotone_rearrangement_check(
    const std::function<double(double)>& f,
    const std::function<double(double)>& g, double x) {
    if (!(x > 0.0)) throw std::invalid_argument("monotone_rearrangement_check: x must be > 0");
    MonotoneRearrangementReport rep;

    constexpr int kGrid = 2001;
    rep.f_admissible = true;
    double prev = f(0.0);
    double fscale = std::abs(prev);
    for (int i = 1; i < kGrid; ++i) {
        const double fi = f(x * i / (kGrid - 1));
        fscale = std::max(fscale, std::abs(fi));
        if (fi < -1e-12 || fi > prev + 1e-10 * std::max(1.0, fscale)) {
            rep.f_admissible = false;
            break;
        }
        prev = fi;
    }

    double sup_g = 0.0;
    for (int i = 0; i < 4001; ++i) sup_g = std::max(sup_g, std::abs(g(x * i / 4000.0)));
    rep.sup_g = sup_g;

    quad::Options opt;
    opt.abs_tol = 1e-12 * std::max(1.0, fscale * sup_g * x);
    const double int_g = quad::adaptive_simpson(g, 0.0, x, opt);
    rep.precondition_ok = int_g <= 0.5 * x * sup_g + 1e-9 * std::max(1.0, sup_g * x);
    if (!rep.f_admissible || !rep.precondition_ok) return rep;

    auto fg = [&](double t) { return f(t) * g(t); };
    rep.lhs = quad::adaptive_simpson(fg, 0.0, x, opt);
    const double head = quad::adaptive_simpson(f, 0.0, 0.75 * x, opt);
    const double tail = quad::adaptive_simpson(f, 0.75 * x, x, opt);
    rep.rhs = sup_g * (head - tail);
    rep.margin = rep.rhs - rep.lhs;
    rep.holds = rep.lhs <= rep.rhs + 1e-8 * std::max(1.0, std::abs(rep.rhs));
    return rep;
}

namespace {

RefinedReport refine_common(ineq::InequalityReport plain, const SpectralGap& gap,
                            int n, double exponent_for_pipeline, StripSide natural_side,
                            std::optional<StripSide> side_hint) {
    RefinedReport rep;
    rep.plain = std::move(plain);
    rep.gap = gap;
    rep.d_available = true;
    if (!(gap.d > 0.0)) {
        rep.note = "d = 0: no certificate (spectra admit a solvable log relation)";
        return rep;
    }
    rep.bound = certified_improvement(n, exponent_for_pipeline, gap.d,
                                      side_hint.value_or(natural_side));
    rep.certificate = true;
    rep.margin = (1.0 - rep.bound.c_cert) - rep.plain.ratio;
    rep.sound = rep.plain.ratio <= 1.0 - rep.bound.c_cert + 1e-9;
    return rep;
}

} // namespace

RefinedReport refined_mcintosh(const ineq::McIntoshInstance& inst,
                               std::optional<StripSide> side_hint) {
    if (!(inst.r > 0.0 && inst.r < 1.0))
        throw std::invalid_argument("refined_mcintosh: r must lie in (0,1)");
    const ineq::McIntoshInstance norm = inst.normalized ? inst : ineq::normalize(inst);

    spectral::SpectralDecomposition da, db;
    try {
        da = strict_spd_decomposition(norm.A, "refined_mcintosh");
        db = strict_spd_decomposition(norm.B, "refined_mcintosh");
    } catch (const std::domain_error& e) {
        RefinedReport rep;
        rep.plain = ineq::evaluate_mcintosh(norm);
        rep.note = std::string("psd-only input, d unavailable: ") + e.what();
        return rep;
    }

    const SpectralGap gap = compute_d(da.eigenvalues, db.eigenvalues, SignMode::McIntosh);
    // The Re z = 0 boundary carries the {b_j + b_k - 2a_i} family measured by
    // term2; pick the side whose family gap is larger, ties to the left.
    const StripSide natural = gap.term2 >= gap.term1 ? StripSide::Left : StripSide::Right;
    return refine_common(ineq::evaluate_mcintosh(norm), gap, norm.A.n(), norm.r, natural, side_hint);
}

RefinedReport refined_cordes(const ineq::CordesInstance& inst,
                             std::optional<StripSide> side_hint) {
    if (!(inst.s > 0.0 && inst.s < 1.0))
        throw std::invalid_argument("refined_cordes: s must lie in (0,1)");
    const ineq::CordesInstance norm = inst.normalized ? inst : ineq::normalize(inst);

    spectral::SpectralDecomposition da, db;
    try {
        da = strict_spd_decomposition(norm.A, "refined_cordes");
        db = strict_spd_decomposition(norm.B, "refined_cordes");
    } catch (const std::domain_error& e) {
        RefinedReport rep;
        rep.plain = ineq::evaluate_cordes(norm);
        rep.note = std::string("psd-only input, d* unavailable: ") + e.what();
        return rep;
    }

    const SpectralGap gap = compute_d(da.eigenvalues, db.eigenvalues, SignMode::Cordes);
    // The Cordes strip function z -> <A^z B^z v, A^z B^z v> is evaluated at
    // Re z = s, so the pipeline runs with exponent 1-s: the left abscissa is
    // then pi*(1-(1-s)) = pi*s.
    const StripSide natural = gap.term2 >= gap.term1 ? StripSide::Left : StripSide::Right;
    return refine_common(ineq::evaluate_cordes(norm), gap, norm.A.n(), 1.0 - norm.s, natural, side_hint);
}

} // namespace opnorm::refine

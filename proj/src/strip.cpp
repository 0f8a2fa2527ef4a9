#include "opnorm/strip.hpp"

#include "opnorm/quad.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace opnorm::strip {

namespace {

constexpr double kPi = std::numbers::pi;

void require_strip(std::complex<double> z, const char* who) {
    if (z.real() < -1e-12 || z.real() > 1.0 + 1e-12)
        throw std::domain_error(std::string(who) + ": z outside the strip 0 <= Re z <= 1");
}

spectral::SpectralDecomposition strict(const SymMatrix& m, const char* who) {
    auto d = spectral::eigendecompose(m);
    if (spectral::check_spd(d) != spectral::SpdStatus::Spd)
        throw std::domain_error(std::string(who) + ": matrix must be strictly positive definite");
    return d;
}

// Local refinement of a sampled sup of a smooth |.| function.
template <class F>
double refine_sup(F&& fn, double lo_t, double hi_t, int samples) {
    const double h = (hi_t - lo_t) / (samples - 1);
    std::vector<std::pair<double, double>> top;
    for (int i = 0; i < samples; ++i) {
        const double t = lo_t + h * i;
        top.emplace_back(fn(t), t);
    }
    std::partial_sort(top.begin(), top.begin() + std::min<std::size_t>(5, top.size()), top.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    top.resize(std::min<std::size_t>(5, top.size()));
    double best = 0.0;
    for (const auto& [v0, t0] : top) {
        double lo = t0 - h, hi = t0 + h;
        for (int iter = 0; iter < 50; ++iter) {
            const double m1 = lo + (hi - lo) / 3.0;
            const double m2 = hi - (hi - lo) / 3.0;
            if (fn(m1) < fn(m2))
                lo = m1;
            else
                hi = m2;
        }
        best = std::max({best, v0, fn(0.5 * (lo + hi))});
    }
    return best;
}

} // namespace

StripFunction StripFunction::mcintosh(const ineq::McIntoshInstance& inst, Vec v) {
    if (!inst.normalized)
        throw std::invalid_argument("StripFunction: instance must be normalized");
    if (std::abs(norm2(v) - 1.0) > 1e-6)
        throw std::invalid_argument("StripFunction: v must be a unit vector");
    StripFunction f;
    f.mode_ = Mode::McIntosh;
    f.exponent_ = inst.r;
    f.da_ = strict(inst.A, "StripFunction");
    f.db_ = strict(inst.B, "StripFunction");
    f.x_ = inst.X;
    f.v_ = std::move(v);
    return f;
}

StripFunction StripFunction::cordes(const ineq::CordesInstance& inst, Vec v) {
    if (!inst.normalized)
        throw std::invalid_argument("StripFunction: instance must be normalized");
    if (std::abs(norm2(v) - 1.0) > 1e-6)
        throw std::invalid_argument("StripFunction: v must be a unit vector");
    StripFunction f;
    f.mode_ = Mode::Cordes;
    f.exponent_ = inst.s;
    f.da_ = strict(inst.A, "StripFunction");
    f.db_ = strict(inst.B, "StripFunction");
    f.x_ = Matrix::identity(inst.A.n());
    f.v_ = std::move(v);
    return f;
}

std::complex<double> StripFunction::eval(std::complex<double> z) const {
    require_strip(z, "eval_strip");
    const CVec vz = to_complex(v_);
    CVec w;
    if (mode_ == Mode::McIntosh) {
        const CVec u = spectral::complex_power_apply(db_, z, vz);
        w = spectral::complex_power_apply(da_, 1.0 - z, x_ * u);
    } else {
        const CVec u = spectral::complex_power_apply(db_, z, vz);
        w = spectral::complex_power_apply(da_, z, u);
    }
    return bilinear(w, w);
}

double StripFunction::vector_norm(std::complex<double> z) const {
    require_strip(z, "vector_norm");
    const CVec vz = to_complex(v_);
    CVec w;
    if (mode_ == Mode::McIntosh) {
        const CVec u = spectral::complex_power_apply(db_, z, vz);
        w = spectral::complex_power_apply(da_, 1.0 - z, x_ * u);
    } else {
        const CVec u = spectral::complex_power_apply(db_, z, vz);
        w = spectral::complex_power_apply(da_, z, u);
    }
    return cnorm(w);
}

refine::ExponentialSum StripFunction::expansion() const {
    refine::ExponentialSum sum;
    const auto& ca = da_.clusters;
    const auto& cb = db_.clusters;

    // Per B-cluster l: w_l = X pi_l v (X = I for Cordes); per A-cluster K the
    // coefficient is  scale(K) * sum_{k in K} (a_k . w_l)(a_k . w_l').
    std::vector<Vec> w(cb.size());
    for (std::size_t l = 0; l < cb.size(); ++l) {
        const Vec p = spectral::project_cluster(db_, static_cast<int>(l), v_);
        w[l] = (mode_ == Mode::McIntosh) ? x_ * p : p;
    }
    // projections g[K][l][k - begin] = a_k . w_l
    for (std::size_t K = 0; K < ca.size(); ++K) {
        const double alpha = std::log(ca[K].rep);
        const double scale = (mode_ == Mode::McIntosh) ? ca[K].rep * ca[K].rep : 1.0;
        const double afreq = (mode_ == Mode::McIntosh) ? -2.0 * alpha : 2.0 * alpha;
        std::vector<Vec> g(cb.size());
        for (std::size_t l = 0; l < cb.size(); ++l) {
            g[l].resize(ca[K].end - ca[K].begin);
            for (int k = ca[K].begin; k < ca[K].end; ++k) {
                double s = 0.0;
                for (int i = 0; i < da_.n; ++i) s += da_.Q(i, k) * w[l][i];
                g[l][k - ca[K].begin] = s;
            }
        }
        for (std::size_t l = 0; l < cb.size(); ++l) {
            const double beta_l = std::log(cb[l].rep);
            for (std::size_t m = l; m < cb.size(); ++m) {
                const double beta_m = std::log(cb[m].rep);
                double coef = 0.0;
                for (std::size_t k = 0; k < g[l].size(); ++k) coef += g[l][k] * g[m][k];
                coef *= scale * (l == m ? 1.0 : 2.0);
                if (coef != 0.0) sum.add(coef, beta_l + beta_m + afreq);
            }
        }
    }
    return sum;
}

PoissonReconstruction poisson_reconstruct(const StripFunction& F, std::complex<double> z0,
                                          double t_window, double quad_tol) {
    if (!(z0.real() > 0.0 && z0.real() < 1.0))
        throw std::domain_error("poisson_reconstruct: z0 must be interior (0 < Re z0 < 1)");
    const double x0 = kPi * z0.real();
    const double y0 = kPi * z0.imag();

    quad::Options opt;
    opt.abs_tol = quad_tol / 8.0;

    auto left = [&](double t) {
        return refine::poisson_kernel(x0, t - y0) * F.eval({0.0, t / kPi});
    };
    auto right = [&](double t) {
        return refine::poisson_kernel(kPi - x0, t - y0) * F.eval({1.0, t / kPi});
    };
    auto kernels = [&](double t) {
        return refine::poisson_kernel(x0, t - y0) + refine::poisson_kernel(kPi - x0, t - y0);
    };

    PoissonReconstruction rec;
    const std::complex<double> sum =
        quad::adaptive_simpson(left, -t_window, t_window, opt) +
        quad::adaptive_simpson(right, -t_window, t_window, opt);
    rec.value = sum / (2.0 * kPi);
    rec.weight_mass = quad::adaptive_simpson(kernels, -t_window, t_window, opt) / (2.0 * kPi);
    // Kernel mass beyond the window; |F| <= 1 on the boundary.
    const double reach = t_window - std::abs(y0);
    rec.tail_bound = (2.0 * std::sin(x0) + 2.0 * std::sin(kPi - x0)) * std::exp(-reach) *
                     (1.0 + 1e-3) / (2.0 * kPi) * 2.0;
    return rec;
}

Corollary3Report corollary3_bounds(const ineq::McIntoshInstance& inst, const Vec& v,
                                   double r, int t_points, double t_max) {
    const ineq::McIntoshInstance norm = inst.normalized ? inst : ineq::normalize(inst);
    ineq::McIntoshInstance with_r = norm;
    with_r.r = r;
    const StripFunction F = StripFunction::mcintosh(with_r, v);

    // z = -it gives A^{1+it} X B^{-it} v; z = 1 + it gives A^{-it} X B^{1+it} v.
    // Both boundary norms are reached through vector_norm at Re z in {0,1}.
    auto left_norm = [&](double t) { return F.vector_norm({0.0, -t}); };
    auto right_norm = [&](double t) { return F.vector_norm({1.0, t}); };

    Corollary3Report rep;
    rep.mid = norm2(spectral::real_power(spectral::eigendecompose(norm.A), r) *
                    (norm.X * (spectral::real_power(spectral::eigendecompose(norm.B), 1.0 - r) * v)));
    rep.sup_left = refine_sup(left_norm, -t_max, t_max, t_points);
    rep.sup_right = refine_sup(right_norm, -t_max, t_max, t_points);
    const double sup_left2 = refine_sup(left_norm, -t_max, t_max, 2 * t_points);
    const double sup_right2 = refine_sup(right_norm, -t_max, t_max, 2 * t_points);
    rep.grid_sensitive = std::abs(sup_left2 - rep.sup_left) > 1e-6 ||
                         std::abs(sup_right2 - rep.sup_right) > 1e-6;
    rep.sup_left = std::max(rep.sup_left, sup_left2);
    rep.sup_right = std::max(rep.sup_right, sup_right2);
    rep.product = std::pow(rep.sup_left, r) * std::pow(rep.sup_right, 1.0 - r);
    rep.plain_rhs = std::pow(spectral::operator_norm_value(norm.A * norm.X), r) *
                    std::pow(spectral::operator_norm_value(norm.X * norm.B), 1.0 - r);
    rep.chain_holds = rep.mid <= rep.product + 1e-9 && rep.product <= rep.plain_rhs + 1e-9;
    return rep;
}

StripGrid eval_grid(const StripFunction& F, int nx, int nt, double t_max) {
    if (nx < 2 || nt < 2) throw std::invalid_argument("eval_grid: need nx, nt >= 2");
    StripGrid grid;
    grid.xs.resize(nx);
    grid.ts.resize(nt);
    for (int i = 0; i < nx; ++i) grid.xs[i] = static_cast<double>(i) / (nx - 1);
    for (int j = 0; j < nt; ++j) grid.ts[j] = -t_max + 2.0 * t_max * j / (nt - 1);
    grid.values.resize(static_cast<std::size_t>(nx) * nt);
    grid.column_max.assign(nx, 0.0);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < nt; ++j) {
            const std::complex<double> val = F.eval({grid.xs[i], grid.ts[j]});
            grid.values[static_cast<std::size_t>(i) * nt + j] = val;
            const double m = std::abs(val);
            grid.column_max[i] = std::max(grid.column_max[i], m);
            if (i == 0 || i == nx - 1)
                grid.boundary_max = std::max(grid.boundary_max, m);
            else
                grid.interior_max = std::max(grid.interior_max, m);
        }
    return grid;
}

MaxPrincipleReport max_principle_probe(const StripFunction& F, int nx, int nt, double t_max) {
    MaxPrincipleReport rep;
    double max_dev = 0.0;
    for (int i = 1; i < nx - 1; ++i) {
        const double x = static_cast<double>(i) / (nx - 1);
        for (int j = 0; j < nt; ++j) {
            const double t = -t_max + 2.0 * t_max * j / (nt - 1);
            const std::complex<double> val = F.eval({x, t});
            const double m = std::abs(val);
            if (m > rep.interior_max) {
                rep.interior_max = m;
                rep.at_x = x;
                rep.at_t = t;
            }
            max_dev = std::max(max_dev, std::abs(val - 1.0));
        }
    }
    rep.max_dev_from_one = max_dev;
    rep.near_max = rep.interior_max >= 1.0 - 1e-9;
    rep.constant_one = rep.near_max && max_dev <= 1e-7;
    return rep;
}

} // namespace opnorm::strip

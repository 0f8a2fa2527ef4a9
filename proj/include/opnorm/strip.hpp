#pragma once

#include "opnorm/inequalities.hpp"
#include "opnorm/refinement.hpp"
#include "opnorm/spectral.hpp"

#include <complex>
#include <vector>

namespace opnorm::strip {

enum class Mode { McIntosh, Cordes };

// Holomorphic strip function on {0 <= Re z <= 1}:
//   McIntosh: F(z) = <A^{1-z} X B^z v, A^{1-z} X B^z v>_R
//   Cordes:   F(z) = <A^z B^z v, A^z B^z v>_R
// with the unconjugated bilinear pairing (the conjugated form is not
// holomorphic).  The instance must be normalized and strictly SPD; then
// |F| <= 1 on the whole strip.
class StripFunction {
public:
    static StripFunction mcintosh(const ineq::McIntoshInstance& inst, Vec v);
    static StripFunction cordes(const ineq::CordesInstance& inst, Vec v);

    std::complex<double> eval(std::complex<double> z) const;

    // Restriction to Re z = 0 as an exponential sum; frequencies come from
    // {b_l + b_l' - 2 a_k} (McIntosh) or {b_l + b_l' + 2 a_k} (Cordes),
    // using cluster projectors so multiplicities merge exactly.
    refine::ExponentialSum expansion() const;

    // Hermitian norm of the defining vector at z (boundary suprema for the
    // two-sided bound use this, not the bilinear pairing).
    double vector_norm(std::complex<double> z) const;

    int dim() const { return da_.n; }
    Mode mode() const { return mode_; }
    double exponent() const { return exponent_; }
    const Vec& v() const { return v_; }

private:
    StripFunction() = default;

    Mode mode_ = Mode::McIntosh;
    double exponent_ = 0.5; // r (McIntosh) or s (Cordes)
    spectral::SpectralDecomposition da_, db_;
    Matrix x_; // identity for Cordes
    Vec v_;
};

struct PoissonReconstruction {
    std::complex<double> value;
    double weight_mass = 0.0; // quadrature mass of both kernel windows / 2pi
    double tail_bound = 0.0;  // kernel mass beyond the window, |F| <= 1
};

// Reconstructs F(z0) for 0 < Re z0 < 1 from boundary values via the width-pi
// strip kernel, truncated at kernel ordinate |t| <= t_window.
PoissonReconstruction poisson_reconstruct(const StripFunction& F, std::complex<double> z0,
                                          double t_window, double quad_tol);

struct Corollary3Report {
    double mid = 0.0;        // ||A^r X B^{1-r} v||
    double sup_left = 0.0;   // sup_t ||A^{1+it} X B^{-it} v||
    double sup_right = 0.0;  // sup_t ||A^{it} X B^{1-it} v||
    double product = 0.0;    // sup_left^r * sup_right^{1-r}
    double plain_rhs = 0.0;  // ||AX||^r ||XB||^{1-r}
    bool chain_holds = false;
    bool grid_sensitive = false; // doubling the grid moved a supremum > 1e-6
};

Corollary3Report corollary3_bounds(const ineq::McIntoshInstance& inst, const Vec& v,
                                   double r, int t_points = 400, double t_max = 40.0);

struct StripGrid {
    std::vector<double> xs; // Re z values
    std::vector<double> ts; // Im z values
    std::vector<std::complex<double>> values; // row-major over (x, t)
    std::vector<double> column_max; // max |F| per x column
    double boundary_max = 0.0;
    double interior_max = 0.0;

    std::complex<double> at(int ix, int it) const {
        return values[static_cast<std::size_t>(ix) * ts.size() + it];
    }
};

StripGrid eval_grid(const StripFunction& F, int nx, int nt, double t_max);

struct MaxPrincipleReport {
    bool near_max = false;     // interior max within 1e-9 of 1
    bool constant_one = false; // grid values all within 1e-7 of 1
    double interior_max = 0.0;
    double at_x = 0.0;
    double at_t = 0.0;
    double max_dev_from_one = 0.0;
};

MaxPrincipleReport max_principle_probe(const StripFunction& F, int nx = 21, int nt = 161,
                                       double t_max = 40.0);

} // namespace opnorm::strip

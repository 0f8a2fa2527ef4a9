#pragma once

#include "opnorm/inequalities.hpp"
#include "opnorm/matrix.hpp"

#include <array>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace opnorm::refine {

// Sign convention for the spectral distance:
//   McIntosh: |log l_i + log l_j - 2 log m_k| and |2 log l_i - log m_j - log m_k|
//   Cordes:   |log l_i + log l_j + 2 log m_k| and |2 log l_i + log m_j + log m_k|
enum class SignMode { McIntosh, Cordes };

struct SpectralGap {
    double term1 = 0.0;
    double term2 = 0.0;
    double d = 0.0; // term1 + term2
    std::array<int, 3> witness1{}; // (i, j, k) achieving term1
    std::array<int, 3> witness2{}; // (i, j, k) achieving term2
    SignMode mode = SignMode::McIntosh;
};

// Exact brute force over all index triples.  Spectra must be strictly
// positive; the caller is responsible for feeding normalized spectra.
SpectralGap compute_d(const std::vector<double>& spectrumA,
                      const std::vector<double>& spectrumB, SignMode mode);

// Instance-level guards: require the normalized flag and strict SPD.
SpectralGap compute_d(const ineq::McIntoshInstance& inst);
SpectralGap compute_d(const ineq::CordesInstance& inst);

// Finite sum  sum_j c_j e^{i d_j t}  with real coefficients.  Terms with
// bit-identical frequencies are merged on insertion.
struct ExponentialSum {
    struct Term {
        double coef = 0.0;
        double freq = 0.0;
    };
    std::vector<Term> terms;

    void add(double coef, double freq);
    std::complex<double> eval(double t) const;
    // Smallest |d_j| over nonconstant terms; +inf when all terms are constant.
    double min_abs_freq() const;
    double sigma_lo() const; // min frequency over nonzero terms
    double sigma_hi() const; // max frequency
    double coef_abs_sum() const;
    double constant_part() const;
};

// Lower estimate of sup_t |f(t)| by dense sampling plus local ternary
// refinement around the top grid maxima.
struct SupEstimate {
    double value = 0.0;
    double window = 0.0;
    int samples = 0;
    double grid_spacing = 0.0;
};
SupEstimate sup_estimate(const ExponentialSum& f, double window, int samples);

enum class StripSide { Left, Right };

// Artifacts of the constructive improvement pipeline.
struct CertifiedBound {
    int n = 0;
    double r = 0.0;
    double d = 0.0;
    double delta = 0.0;       // d/2
    double ell = 0.0;         // 2 sqrt(n) / delta
    StripSide side = StripSide::Left;
    double x_abscissa = 0.0;  // kernel abscissa on the width-pi strip
    double window = 0.0;      // upper integration ordinate actually used
    double poisson_gain = 0.0;// 2 * kernel mass on [3 window/4, window] (+ tail)
    double c_cert = 0.0;      // poisson_gain / (2 (pi - x))
    bool clamped = false;     // ell exceeded the quadrature guard
    bool plateau = false;     // window held at the interior maximum
};

// Certified improvement constant for dimension n, exponent r in (0,1) and
// spectral distance d > 0.  side_hint overrides the default Left side.
CertifiedBound certified_improvement(int n, double r, double d,
                                     std::optional<StripSide> side_hint = {});

// Strip Poisson kernel P(x,y) = sin x / (cosh y - cos x), 0 < x < pi.
double poisson_kernel(double x, double y);

// Kernel mass on [y0, y1] for 0 <= y0 <= y1 (adaptive quadrature after the
// substitution u = e^{-y}, which keeps relative accuracy at large ordinates).
double poisson_kernel_mass(double x, double y0, double y1);

struct ShapeFitReport {
    bool degenerate = false;
    double slope = 0.0;     // least squares slope of log c against sqrt(n)/d
    double intercept = 0.0;
    double a = 0.0;         // envelope log c >= a - b sqrt(n)/d
    double b = 0.0;
    bool envelope_holds = false;
    bool decay_positive = false; // fitted slope negative, i.e. b > 0
    std::vector<std::array<double, 3>> points; // (sqrt(n)/d, log c, c)
};

ShapeFitReport asymptotic_shape_check(const std::vector<int>& n_grid,
                                      const std::vector<double>& d_grid, double r);

struct OscillationWindowReport {
    double lhs = 0.0;          // |integral over [-2 sqrt(n)/eta, 2 sqrt(n)/eta]|
    double rhs = 0.0;          // (2 sqrt(n)/eta) * sup estimate
    double margin = 0.0;
    double sup_estimate = 0.0;
    double half_window = 0.0;  // 2 sqrt(n)/eta
    bool holds = false;
};

// A sum whose frequencies all satisfy |d_j| >= eta averages out on the window
// [-2 sqrt(n)/eta, 2 sqrt(n)/eta]: the integral is at most half of window
// length times sup-norm.  The integral is evaluated term by term in closed
// form; the sup-norm side uses the sampling estimate.
OscillationWindowReport oscillation_window_check(const ExponentialSum& sum, double eta);

struct MonotoneRearrangementReport {
    bool f_admissible = false;   // nonnegative, nonincreasing on the grid
    bool precondition_ok = false;// int_0^x g <= (x/2) sup|g|
    double lhs = 0.0;            // int_0^x f g
    double rhs = 0.0;            // sup|g| (int_0^{3x/4} f - int_{3x/4}^x f)
    double margin = 0.0;
    double sup_g = 0.0;
    bool holds = false;
};

// For nonincreasing f >= 0 and g whose mass over [0,x] is at most half of
// x * sup|g|, the extremal pairing is +sup on the first three quarters and
// -sup on the last:  int f g <= sup|g| (int_0^{3x/4} f - int_{3x/4}^x f).
MonotoneRearrangementReport monotone_rearrangement_check(
    const std::function<double(double)>& f,
    const std::function<double(double)>& g, double x);

struct RefinedReport {
    ineq::InequalityReport plain; // evaluated on the normalized instance
    bool d_available = false;
    std::string note;
    SpectralGap gap;
    bool certificate = false;
    CertifiedBound bound;
    bool sound = false;  // ratio <= 1 - c_cert + 1e-9
    double margin = 0.0; // (1 - c_cert) - ratio
};

RefinedReport refined_mcintosh(const ineq::McIntoshInstance& inst,
                               std::optional<StripSide> side_hint = {});
RefinedReport refined_cordes(const ineq::CordesInstance& inst,
                             std::optional<StripSide> side_hint = {});

} // namespace opnorm::refine

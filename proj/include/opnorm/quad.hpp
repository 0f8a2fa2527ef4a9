#pragma once

#include <cmath>
#include <complex>
#include <cstddef>

namespace opnorm::quad {

struct Options {
    double abs_tol = 1e-10;
    int max_depth = 48;
    int min_depth = 4;
};

namespace detail {

template <class F, class V>
V simpson_step(F& f, double a, double b, V fa, V fm, V fb, V whole,
               double tol, int depth, const Options& opt) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const V flm = f(lm);
    const V frm = f(rm);
    const V left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const V right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const V delta = left + right - whole;
    if (depth >= opt.min_depth &&
        (std::abs(delta) <= 15.0 * tol || depth >= opt.max_depth)) {
        return left + right + delta / 15.0;
    }
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, opt) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, opt);
}

} // namespace detail

// Adaptive Simpson with Richardson correction.  Works for double and
// std::complex<double> integrands.
template <class F>
auto adaptive_simpson(F&& f, double a, double b, Options opt = {}) {
    using V = decltype(f(a));
    if (a == b) return V{};
    const V fa = f(a);
    const V fb = f(b);
    const double m = 0.5 * (a + b);
    const V fm = f(m);
    const V whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, b, fa, fm, fb, whole, opt.abs_tol, 0, opt);
}

} // namespace opnorm::quad

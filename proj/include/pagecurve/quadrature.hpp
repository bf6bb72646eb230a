#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "pagecurve/common.hpp"

namespace pagecurve::quad {

// Tolerances and hints for the adaptive integrators.
struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    std::vector<double> split_points;  // interior breakpoints (peaks, kinks)
    int max_intervals = 4000;
    // Optional explicit high-frequency truncation for semi-infinite integrands
    // known to decay like C/w^p: the cutoff is chosen so the analytic tail
    // bound stays below tolerance and is folded into the error estimate.
    // When tail_exponent == 0 the integral is compactified onto [0,1] instead.
    double tail_exponent = 0.0;
    double tail_probe = 0.0;  // frequency where the decay coefficient is probed
};

template <typename T>
struct IntegResult {
    T value{};
    double error = 0.0;  // estimate, includes any truncated-tail bound
    long evaluations = 0;
    bool converged = false;
};

using Result = IntegResult<double>;
using ComplexResult = IntegResult<Complex>;

// Adaptive Gauss-Kronrod 7/15 with bisection on [a, b].
Result integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec = {});
ComplexResult integrate(const std::function<Complex(double)>& f, double a, double b,
                        const QuadratureSpec& spec = {});

// \int_0^inf f(w) dw.
Result integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec = {});
ComplexResult integrate_semi_infinite(const std::function<Complex(double)>& f,
                                      const QuadratureSpec& spec = {});

// Roots of a3 s^3 + a2 s^2 + a1 s + a0 (a3 != 0), canonically ordered by
// (Re, Im) ascending; conjugate pairing is enforced for real coefficients.
struct CubicRoots {
    std::array<Complex, 3> roots{};
    double max_residual = 0.0;  // max |D(s_j)| relative to coefficient scale
    bool near_degenerate = false;
};
CubicRoots cubic_roots(double a3, double a2, double a1, double a0);

}  // namespace pagecurve::quad

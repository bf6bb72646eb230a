#pragma once

#include <complex>
#include <vector>

#include "pagecurve/common.hpp"
#include "pagecurve/quadrature.hpp"

namespace pagecurve::spectral {

// Ohmic bath with Lorentz-Drude cutoff: J(w) = gamma w / (1 + (w/Lambda)^2),
// held at temperature T (k_B = hbar = 1).
struct BathSpec {
    double gamma = 0.0;
    double lambda_cutoff = 1.0;
    double temperature = 0.0;

    void validate() const;
    double beta() const { return 1.0 / temperature; }
};

// One term of the exponential decomposition C(t) = sum_k c_k e^{-nu_k t}.
struct ExponentialTerm {
    Complex coefficient;  // c_k
    double rate;          // nu_k > 0
};

double spectral_density(double omega, const BathSpec& bath);

// Delta w^2 = gamma * Lambda = (2/pi) \int J(w)/w dw.
double counterterm_frequency_sq(const BathSpec& bath);

// chi(t) = (2/pi) \int_0^inf J(w) sin(wt) dw = gamma Lambda^2 e^{-Lambda t}.
double dissipation_kernel(double t, const BathSpec& bath);

// chi_hat(s) = gamma Lambda^2 / (s + Lambda).
Complex dissipation_kernel_laplace(Complex s, const BathSpec& bath);

// C(t) = (1/pi) \int_0^inf J(w) [coth(beta w/2) cos(wt) - i sin(wt)] dw,
// evaluated by adaptive quadrature (the oscillatory part on a rotated ray).
// coth -> 1 at T = 0. Diverges logarithmically at t = 0 for gamma > 0.
Complex bath_correlation(double t, const BathSpec& bath,
                         const quad::QuadratureSpec& spec = {});

// Drude pole + n_terms Matsubara terms. Requires T > 0.
std::vector<ExponentialTerm> matsubara_expansion(const BathSpec& bath, int n_terms);

// Residual Markovian weight of the truncated Matsubara tail,
// Delta_{N_k} = sum_{k > N_k} Re(c_k) / nu_k.
double terminator_strength(const BathSpec& bath, int n_terms);

// J(w) coth(beta w/2) for complex w; analytic off the imaginary axis.
// This is the thermal weight of every stationary-noise integral.
Complex thermal_weight(Complex omega, const BathSpec& bath);

}  // namespace pagecurve::spectral

#pragma once

#include <array>
#include <complex>
#include <vector>

#include "pagecurve/common.hpp"
#include "pagecurve/spectral.hpp"

namespace pagecurve::qbm {

// Harmonic impurity of unit mass; the renormalized frequency includes the
// counter-term, w_R^2 = w_0^2 + gamma Lambda.
struct OscillatorSpec {
    double omega0 = 1.0;
    spectral::BathSpec bath;

    void validate() const;
    double renormalized_frequency_sq() const {
        return omega0 * omega0 + spectral::counterterm_frequency_sq(bath);
    }
};

// Symmetric second moments (sigma_xx, sigma_xp, sigma_pp).
struct CovarianceMatrix {
    double sxx = 0.5;
    double sxp = 0.0;
    double spp = 0.5;

    double det() const { return sxx * spp - sxp * sxp; }
    // Heisenberg: det >= 1/4 (hbar = 1)
    void validate(double tol = 1e-9) const;
};

struct GaussianState {
    std::array<double, 2> mean{0.0, 0.0};  // (<x>, <p>)
    CovarianceMatrix cov;
};

// 2x2 real matrix for the phase-space propagator G(t).
struct Mat2d {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;
    double det() const { return m11 * m22 - m12 * m21; }
};

// Exponential-sum representation of g(t) = sum_j A_j e^{s_j t}: the roots s_j
// of D(s) = (s^2 + w_R^2)(s + Lambda) - gamma Lambda^2 and residues
// A_j = (s_j + Lambda)/D'(s_j). For gamma = 0 the cubic degenerates and the
// kernel holds the two free-oscillator roots +-i w_0 instead.
struct PropagatorKernel {
    std::vector<Complex> roots;
    std::vector<Complex> residues;
    bool degenerate_flagged = false;

    // g and derivatives, g^{(order)}(t) = sum_j A_j s_j^order e^{s_j t}
    double g(double t, int order = 0) const;
    // sum_j A_j s_j^deriv / (i w - s_j)   (ghat and friends at s = i w)
    Complex ghat_i(Complex omega, int deriv = 0) const;
    // sum_j A_j s_j^deriv e^{s_j t} / (s_j + i w)  (finite-time transient)
    Complex kappa(Complex omega, double t, int deriv = 0) const;

    double resonance_frequency() const;  // |Im| of the slow pair (0 if none)
    double slow_decay_rate() const;      // min_j |Re s_j| over decaying roots
};

PropagatorKernel characteristic_roots(const OscillatorSpec& spec);

// G(t): G11 = G22 = g'(t), G12 = g(t), G21 = g''(t).
Mat2d propagator(const PropagatorKernel& kernel, double t);

// Inhomogeneous (noise-driven) covariance contribution Sigma^N(t):
//   sigma^N_xx = (1/pi) \int J coth(w/2T) |I_g(w,t)|^2 dw,  I_g = \int_0^t g e^{iwt'}dt'
// and analogously with g' for pp / the mixed product for xp.
CovarianceMatrix noise_covariance(const OscillatorSpec& spec, const PropagatorKernel& kernel,
                                  double t, const quad::QuadratureSpec& qspec = {});

// Sigma(t) = G Sigma_0 G^T + Sigma^N(t); means evolve as G * mean.
GaussianState evolve_covariance(const OscillatorSpec& spec, const PropagatorKernel& kernel,
                                const GaussianState& state0, double t,
                                const quad::QuadratureSpec& qspec = {});
GaussianState evolve_covariance(const OscillatorSpec& spec, const GaussianState& state0,
                                double t);

// Long-time covariances from the stationary integrals; sigma_xp = 0 exactly.
CovarianceMatrix steady_covariance(const OscillatorSpec& spec,
                                   const quad::QuadratureSpec& qspec = {});

// Pure localized packet: (delta, 0, 1/(4 delta)), zero means.
GaussianState wave_packet(double delta);

// lambda = sqrt(det Sigma) = |eigenvalue of Sigma Omega|.
double symplectic_eigenvalue(const CovarianceMatrix& cov);

// S = (l + 1/2) log(l + 1/2) - (l - 1/2) log(l - 1/2).
double gaussian_entropy(const CovarianceMatrix& cov, LogBase base = LogBase::nats);

// Single-mode Uhlmann fidelity.
double gaussian_fidelity(const GaussianState& a, const GaussianState& b);

}  // namespace pagecurve::qbm

#include "pagecurve/gaussian_qbm.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "pagecurve/quadrature.hpp"

namespace pagecurve::qbm {
namespace {

constexpr Complex kI{0.0, 1.0};

double entropy_of_lambda(double lam) {
    if (lam <= 0.5) return 0.0;
    const double p = lam + 0.5, q = lam - 0.5;
    return p * std::log(p) - q * std::log(q);
}

}  // namespace

void OscillatorSpec::validate() const {
    bath.validate();
    if (!(omega0 > 0)) throw std::domain_error("OscillatorSpec: omega0 must be > 0");
}

void CovarianceMatrix::validate(double tol) const {
    if (!(sxx > 0) || !(spp > 0))
        throw InvalidStateError("CovarianceMatrix: variances must be positive");
    if (det() < 0.25 - tol) {
        std::ostringstream os;
        os << "CovarianceMatrix: Heisenberg bound violated, det = " << det() << " < 1/4";
        throw InvalidStateError(os.str());
    }
}

double PropagatorKernel::g(double t, int order) const {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        Complex c = residues[j];
        for (int k = 0; k < order; ++k) c *= roots[j];
        acc += c * std::exp(roots[j] * t);
    }
    return acc.real();
}

Complex PropagatorKernel::ghat_i(Complex omega, int deriv) const {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        Complex c = residues[j];
        for (int k = 0; k < deriv; ++k) c *= roots[j];
        acc += c / (kI * omega - roots[j]);
    }
    return acc;
}

Complex PropagatorKernel::kappa(Complex omega, double t, int deriv) const {
    Complex acc = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        Complex c = residues[j];
        for (int k = 0; k < deriv; ++k) c *= roots[j];
        acc += c * std::exp(roots[j] * t) / (roots[j] + kI * omega);
    }
    return acc;
}

double PropagatorKernel::resonance_frequency() const {
    double w = 0.0;
    for (const auto& s : roots) w = std::max(w, std::abs(s.imag()));
    return w;
}

double PropagatorKernel::slow_decay_rate() const {
    double rate = std::numeric_limits<double>::infinity();
    for (const auto& s : roots)
        if (s.real() < 0) rate = std::min(rate, -s.real());
    return std::isfinite(rate) ? rate : 0.0;
}

PropagatorKernel characteristic_roots(const OscillatorSpec& spec) {
    spec.validate();
    PropagatorKernel kernel;
    const double w0 = spec.omega0;
    const double lam = spec.bath.lambda_cutoff;
    double gamma = spec.bath.gamma;

    if (gamma == 0.0) {
        // (s + Lambda) cancels: ghat = 1/(s^2 + w0^2), two roots +-i w0
        kernel.roots = {Complex(0.0, w0), Complex(0.0, -w0)};
        kernel.residues = {1.0 / (2.0 * kI * w0), -1.0 / (2.0 * kI * w0)};
        return kernel;
    }

    for (int attempt = 0;; ++attempt) {
        const double wr2 = w0 * w0 + gamma * lam;
        // D(s) = (s^2 + w_R^2)(s + Lambda) - gamma Lambda^2
        //      = s^3 + Lambda s^2 + w_R^2 s + w_0^2 Lambda
        auto cubic = quad::cubic_roots(1.0, lam, wr2, w0 * w0 * lam);
        if (cubic.near_degenerate && attempt == 0) {
            // measure-zero confluent case: nudge gamma rather than carry
            // confluent partial fractions through every downstream formula
            kernel.degenerate_flagged = true;
            gamma *= 1.0 + 1e-12;
            continue;
        }
        kernel.roots.assign(cubic.roots.begin(), cubic.roots.end());
        break;
    }
    kernel.residues.resize(3);
    for (int j = 0; j < 3; ++j) {
        const Complex s = kernel.roots[j];
        const Complex dp = (3.0 * s + 2.0 * lam) * s + (w0 * w0 + gamma * lam);
        kernel.residues[j] = (s + lam) / dp;
    }
    return kernel;
}

Mat2d propagator(const PropagatorKernel& kernel, double t) {
    if (t < 0) throw std::domain_error("propagator: t must be >= 0");
    Mat2d G;
    G.m11 = G.m22 = kernel.g(t, 1);
    G.m12 = kernel.g(t, 0);
    G.m21 = kernel.g(t, 2);
    return G;
}

namespace {

// Everything below evaluates
//   sigma^N_ab(t) = (1/pi) \int_0^inf W(w) F_ab(w,t) dw,   W = J coth(beta w/2),
// with F built from I_g(w,t) = ghat(-iw) + e^{iwt} kappa_g(w,t). Splitting
// |I|^2 into steady, transient-smooth and e^{iwt}-oscillatory pieces keeps the
// quadrature cost bounded uniformly in t; the oscillatory piece is pushed onto
// a rotated ray where e^{iwt} decays (picking up the residue of the ghat(iw)
// pole that gets crossed).

struct NoiseContext {
    const OscillatorSpec* spec;
    const PropagatorKernel* kernel;
    quad::QuadratureSpec qspec;

    double weight(double w) const { return spectral::thermal_weight(w, spec->bath).real(); }
    Complex weight_c(Complex w) const { return spectral::thermal_weight(w, spec->bath); }

    std::vector<double> split_points() const {
        std::vector<double> pts;
        const double wres = kernel->resonance_frequency();
        const double eta = kernel->slow_decay_rate();
        if (wres > 0) {
            pts.push_back(wres);
            if (wres > 20 * eta) {
                pts.push_back(std::max(0.0, wres - 10 * eta));
                pts.push_back(wres + 10 * eta);
            }
        }
        pts.push_back(spec->bath.lambda_cutoff);
        if (spec->bath.temperature > 0) pts.push_back(2.0 * kPi * spec->bath.temperature);
        return pts;
    }

    double smooth_integral(const std::function<double(double)>& f) const {
        quad::QuadratureSpec s = qspec;
        s.split_points = split_points();
        return quad::integrate_semi_infinite(f, s).value;
    }
};

// steady-state integrands: |ghat(iw)|^2 W and w^2 |ghat(iw)|^2 W
double steady_xx_integrand(const NoiseContext& ctx, double w) {
    const Complex gh = ctx.kernel->ghat_i(w);
    return ctx.weight(w) * std::norm(gh);
}
double steady_pp_integrand(const NoiseContext& ctx, double w) {
    const Complex gh = ctx.kernel->ghat_i(w);
    return w * w * ctx.weight(w) * std::norm(gh);
}

// Oscillatory pieces share the shape W(w) ghat(iw) psi(w) e^{iwt}; integrate
// them together so the pole bookkeeping happens once.
struct OscillatoryPart {
    // psi callbacks for (xx, pp, xp); each returns the factor multiplying
    // W(w) ghat(iw) e^{iwt} in the respective integrand.
    std::function<Complex(Complex)> psi_xx, psi_pp, psi_xp;
};

std::array<double, 3> oscillatory_integrals(const NoiseContext& ctx, double t,
                                            const OscillatoryPart& part) {
    const auto& kernel = *ctx.kernel;
    struct Pole {
        Complex w;
        Complex residue;  // residue of ghat(iw) in w at the pole
    };
    std::vector<Pole> poles;
    for (std::size_t j = 0; j < kernel.roots.size(); ++j) {
        const Complex p = -kI * kernel.roots[j];
        if (p.real() > 0 && p.imag() > 0)
            poles.push_back({p, kernel.residues[j] / kI});
    }
    double theta = 0.0;
    for (double cand : {kPi / 4.0, kPi / 3.0, kPi / 6.0, 0.4 * kPi}) {
        bool ok = true;
        for (const auto& p : poles)
            if (std::abs(std::arg(p.w) - cand) < 0.15) ok = false;
        if (ok) {
            theta = cand;
            break;
        }
    }
    if (theta == 0.0)
        throw NumericalError("noise_covariance: no rotation angle clears the kernel poles");

    std::array<Complex, 3> acc{};
    // residues of poles crossed by the rotation (counterclockwise closure)
    for (const auto& p : poles) {
        if (std::arg(p.w) >= theta) continue;
        const Complex common = 2.0 * kPi * kI * std::exp(kI * p.w * t) *
                               ctx.weight_c(p.w) * p.residue;
        acc[0] += common * part.psi_xx(p.w);
        acc[1] += common * part.psi_pp(p.w);
        acc[2] += common * part.psi_xp(p.w);
    }

    // ray integral: w = r e^{i theta}
    const Complex eith = std::polar(1.0, theta);
    const double damp = std::sin(theta);
    const double wscale =
        10.0 * std::max({kernel.resonance_frequency(), ctx.spec->bath.lambda_cutoff, 1.0});
    const double r_max = std::min(60.0 / (t * damp), wscale * 30.0);

    auto ray = [&](const std::function<Complex(Complex)>& psi) -> Complex {
        auto f = [&](double r) -> Complex {
            const Complex w = r * eith;
            return eith * std::exp(kI * w * t) * ctx.weight_c(w) * kernel.ghat_i(w) * psi(w);
        };
        quad::QuadratureSpec s = ctx.qspec;
        s.split_points = {std::min(ctx.spec->bath.lambda_cutoff, 0.5 * r_max)};
        return quad::integrate(std::function<Complex(double)>(f), 0.0, r_max, s).value;
    };
    acc[0] += ray(part.psi_xx);
    acc[1] += ray(part.psi_pp);
    acc[2] += ray(part.psi_xp);
    return {acc[0].real(), acc[1].real(), acc[2].real()};
}

}  // namespace

CovarianceMatrix noise_covariance(const OscillatorSpec& spec, const PropagatorKernel& kernel,
                                  double t, const quad::QuadratureSpec& qspec) {
    spec.validate();
    if (t < 0) throw std::domain_error("noise_covariance: t must be >= 0");
    CovarianceMatrix out;
    out.sxx = out.sxp = out.spp = 0.0;
    if (t == 0.0 || spec.bath.gamma == 0.0) return out;

    NoiseContext ctx{&spec, &kernel, qspec};

    const double t_direct = 4.0 / spec.bath.lambda_cutoff;
    if (t <= t_direct) {
        // short times: e^{iwt} oscillates slowly; integrate |I_g|^2 as-is
        auto Ig = [&](double w, int deriv) -> Complex {
            Complex acc = 0.0;
            for (std::size_t j = 0; j < kernel.roots.size(); ++j) {
                Complex c = kernel.residues[j];
                for (int k = 0; k < deriv; ++k) c *= kernel.roots[j];
                const Complex z = kernel.roots[j] + kI * w;
                acc += c * (std::exp(z * t) - 1.0) / z;
            }
            return acc;
        };
        out.sxx = ctx.smooth_integral([&](double w) {
                      return ctx.weight(w) * std::norm(Ig(w, 0));
                  }) / kPi;
        out.spp = ctx.smooth_integral([&](double w) {
                      return ctx.weight(w) * std::norm(Ig(w, 1));
                  }) / kPi;
        out.sxp = ctx.smooth_integral([&](double w) {
                      return ctx.weight(w) * (Ig(w, 0) * std::conj(Ig(w, 1))).real();
                  }) / kPi;
        return out;
    }

    // I_g = ghat(-iw) + e^{iwt} kappa_g; |I|^2 splits into
    //   |ghat|^2 (steady) + |kappa|^2 (smooth transient) + 2 Re[e^{iwt} ghat(iw) kappa]
    const double sxx_steady = ctx.smooth_integral(
        [&](double w) { return steady_xx_integrand(ctx, w); });
    const double spp_steady = ctx.smooth_integral(
        [&](double w) { return steady_pp_integrand(ctx, w); });

    const double sxx_trans = ctx.smooth_integral(
        [&](double w) { return ctx.weight(w) * std::norm(kernel.kappa(w, t, 0)); });
    const double spp_trans = ctx.smooth_integral(
        [&](double w) { return ctx.weight(w) * std::norm(kernel.kappa(w, t, 1)); });
    const double sxp_trans = ctx.smooth_integral([&](double w) {
        return ctx.weight(w) *
               (kernel.kappa(w, t, 0) * std::conj(kernel.kappa(w, t, 1))).real();
    });

    OscillatoryPart part;
    part.psi_xx = [&](Complex w) { return 2.0 * kernel.kappa(w, t, 0); };
    part.psi_pp = [&](Complex w) { return 2.0 * kI * w * kernel.kappa(w, t, 1); };
    part.psi_xp = [&](Complex w) {
        return kI * w * kernel.kappa(w, t, 0) + kernel.kappa(w, t, 1);
    };
    const auto osc = oscillatory_integrals(ctx, t, part);

    out.sxx = (sxx_steady + sxx_trans + osc[0]) / kPi;
    out.spp = (spp_steady + spp_trans + osc[1]) / kPi;
    out.sxp = (sxp_trans + osc[2]) / kPi;  // steady cross part vanishes identically
    return out;
}

GaussianState evolve_covariance(const OscillatorSpec& spec, const PropagatorKernel& kernel,
                                const GaussianState& state0, double t,
                                const quad::QuadratureSpec& qspec) {
    state0.cov.validate();
    if (t == 0.0) return state0;
    const Mat2d G = propagator(kernel, t);
    const CovarianceMatrix n = noise_covariance(spec, kernel, t, qspec);
    const auto& c0 = state0.cov;

    GaussianState out;
    out.mean = {G.m11 * state0.mean[0] + G.m12 * state0.mean[1],
                G.m21 * state0.mean[0] + G.m22 * state0.mean[1]};
    // G Sigma G^T
    const double a = G.m11 * c0.sxx + G.m12 * c0.sxp;
    const double b = G.m11 * c0.sxp + G.m12 * c0.spp;
    const double c = G.m21 * c0.sxx + G.m22 * c0.sxp;
    const double d = G.m21 * c0.sxp + G.m22 * c0.spp;
    out.cov.sxx = a * G.m11 + b * G.m12 + n.sxx;
    out.cov.sxp = a * G.m21 + b * G.m22 + n.sxp;
    out.cov.spp = c * G.m21 + d * G.m22 + n.spp;
    out.cov.validate();
    return out;
}

GaussianState evolve_covariance(const OscillatorSpec& spec, const GaussianState& state0,
                                double t) {
    return evolve_covariance(spec, characteristic_roots(spec), state0, t);
}

CovarianceMatrix steady_covariance(const OscillatorSpec& spec,
                                   const quad::QuadratureSpec& qspec) {
    spec.validate();
    if (spec.bath.gamma == 0.0)
        throw std::domain_error("steady_covariance: no unique steady state at gamma = 0");
    const PropagatorKernel kernel = characteristic_roots(spec);
    NoiseContext ctx{&spec, &kernel, qspec};
    CovarianceMatrix out;
    out.sxx = ctx.smooth_integral([&](double w) { return steady_xx_integrand(ctx, w); }) / kPi;
    out.spp = ctx.smooth_integral([&](double w) { return steady_pp_integrand(ctx, w); }) / kPi;
    out.sxp = 0.0;
    out.validate();
    return out;
}

GaussianState wave_packet(double delta) {
    if (!(delta > 0)) throw std::domain_error("wave_packet: delta must be > 0");
    GaussianState s;
    s.cov = {delta, 0.0, 0.25 / delta};
    return s;
}

double symplectic_eigenvalue(const CovarianceMatrix& cov) {
    cov.validate();
    return std::sqrt(std::max(cov.det(), 0.25));
}

double gaussian_entropy(const CovarianceMatrix& cov, LogBase base) {
    return apply_base(entropy_of_lambda(symplectic_eigenvalue(cov)), base);
}

double gaussian_fidelity(const GaussianState& a, const GaussianState& b) {
    a.cov.validate();
    b.cov.validate();
    const double sxx = a.cov.sxx + b.cov.sxx;
    const double sxp = a.cov.sxp + b.cov.sxp;
    const double spp = a.cov.spp + b.cov.spp;
    const double big_delta = sxx * spp - sxp * sxp;
    const double lam_t = std::max(0.0, (4.0 * a.cov.det() - 1.0) * (4.0 * b.cov.det() - 1.0) / 4.0);
    const double dx = a.mean[0] - b.mean[0];
    const double dp = a.mean[1] - b.mean[1];
    // d^T (Sigma_a + Sigma_b)^{-1} d
    const double quad_form = (spp * dx * dx - 2.0 * sxp * dx * dp + sxx * dp * dp) / big_delta;
    const double F =
        std::exp(-0.5 * quad_form) / (std::sqrt(big_delta + lam_t) - std::sqrt(lam_t));
    return std::clamp(F, 0.0, 1.0);
}

}  // namespace pagecurve::qbm

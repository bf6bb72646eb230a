#include "pagecurve/spectral.hpp"

#include <cmath>
#include <sstream>

namespace pagecurve::spectral {
namespace {

constexpr Complex kI{0.0, 1.0};

// \int_0^inf J(w) e^{iwt} dw for t > 0, via rotation onto the ray w = r e^{i pi/4}.
// The factor e^{iwt} decays like e^{-rt/sqrt(2)} there, and J has no pole in the
// sector (its poles sit at +-i Lambda).
Complex drude_fourier(double t, const BathSpec& bath, const quad::QuadratureSpec& spec) {
    const double lam = bath.lambda_cutoff;
    const Complex eith = std::polar(1.0, kPi / 4.0);
    auto integrand = [&](double r) -> Complex {
        const Complex w = r * eith;
        const Complex j = bath.gamma * w / (1.0 + (w / lam) * (w / lam));
        return eith * j * std::exp(kI * w * t);
    };
    // support ends once the exponential damping has killed the 1/r envelope
    const double r_max = 60.0 * std::sqrt(2.0) / t;
    quad::QuadratureSpec s = spec;
    s.split_points = {std::min(lam, 0.5 * r_max)};
    return quad::integrate(std::function<Complex(double)>(integrand), 0.0, r_max, s).value;
}

}  // namespace

void BathSpec::validate() const {
    if (gamma < 0) throw std::domain_error("BathSpec: gamma must be >= 0");
    if (!(lambda_cutoff > 0)) throw std::domain_error("BathSpec: lambda_cutoff must be > 0");
    if (temperature < 0) throw std::domain_error("BathSpec: temperature must be >= 0");
}

double spectral_density(double omega, const BathSpec& bath) {
    bath.validate();
    if (omega < 0) throw std::domain_error("spectral_density: omega must be >= 0");
    const double x = omega / bath.lambda_cutoff;
    return bath.gamma * omega / (1.0 + x * x);
}

double counterterm_frequency_sq(const BathSpec& bath) {
    bath.validate();
    return bath.gamma * bath.lambda_cutoff;
}

double dissipation_kernel(double t, const BathSpec& bath) {
    bath.validate();
    if (t < 0) throw std::domain_error("dissipation_kernel: t must be >= 0");
    const double lam = bath.lambda_cutoff;
    return bath.gamma * lam * lam * std::exp(-lam * t);
}

Complex dissipation_kernel_laplace(Complex s, const BathSpec& bath) {
    bath.validate();
    const double lam = bath.lambda_cutoff;
    if (std::abs(s + lam) < 1e-14 * lam)
        throw NumericalError("dissipation_kernel_laplace: pole at s = -Lambda");
    return bath.gamma * lam * lam / (s + lam);
}

Complex thermal_weight(Complex omega, const BathSpec& bath) {
    const double lam = bath.lambda_cutoff;
    const Complex j = bath.gamma * omega / (1.0 + (omega / lam) * (omega / lam));
    if (bath.temperature == 0.0) return j;
    const Complex x = 0.5 * bath.beta() * omega;  // coth(x)
    if (std::abs(x) < 0.05) {
        // J(w) coth(beta w/2) is analytic at w = 0; expand to avoid 0/0
        const Complex x2 = x * x;
        const Complex coth_times_x = 1.0 + x2 / 3.0 - x2 * x2 / 45.0;
        return bath.gamma * omega / (1.0 + (omega / lam) * (omega / lam)) / x * coth_times_x;
    }
    if (x.real() > 350.0) return j;
    const Complex e2x = std::exp(2.0 * x);
    return j * (1.0 + 2.0 / (e2x - 1.0));
}

Complex bath_correlation(double t, const BathSpec& bath, const quad::QuadratureSpec& spec) {
    bath.validate();
    if (t < 0) throw std::domain_error("bath_correlation: t must be >= 0");
    if (bath.gamma == 0.0) return {0.0, 0.0};
    if (t == 0.0)
        throw NumericalError(
            "bath_correlation: C(0) diverges logarithmically for the Lorentz-Drude bath "
            "(the integrand J(w)coth(beta w/2) falls off only as 1/w)");

    // coth = 1 + 2 n(w): the "1" part is the zero-point piece, handled on the
    // rotated ray; the thermal part decays like e^{-beta w} and integrates directly.
    const Complex zero_point = drude_fourier(t, bath, spec);
    double thermal = 0.0;
    if (bath.temperature > 0) {
        const double beta = bath.beta();
        auto f = [&](double w) -> double {
            if (w <= 0) return 2.0 * bath.gamma / beta;  // limit of 2 J(w) n(w)
            const double n = 1.0 / std::expm1(beta * w);
            return 2.0 * spectral_density(w, bath) * n * std::cos(w * t);
        };
        quad::QuadratureSpec s = spec;
        s.split_points = {1.0 / beta, bath.lambda_cutoff};
        thermal = quad::integrate_semi_infinite(std::function<double(double)>(f), s).value;
    }
    return Complex((zero_point.real() + thermal) / kPi, -zero_point.imag() / kPi);
}

std::vector<ExponentialTerm> matsubara_expansion(const BathSpec& bath, int n_terms) {
    bath.validate();
    if (bath.temperature == 0.0)
        throw std::domain_error(
            "matsubara_expansion: unsupported at T = 0 (the expansion in nu_k = 2 pi k T "
            "collapses; the hierarchy solver requires T > 0)");
    if (n_terms < 1) throw std::domain_error("matsubara_expansion: n_terms must be >= 1");

    const double lam = bath.lambda_cutoff;
    const double beta = bath.beta();
    const double g2 = bath.gamma * lam * lam;

    if (std::abs(std::sin(0.5 * beta * lam)) < 1e-10)
        throw NumericalError(
            "matsubara_expansion: Lambda coincides with a Matsubara frequency "
            "(cot(beta Lambda / 2) pole); perturb Lambda or T");

    std::vector<ExponentialTerm> terms;
    terms.reserve(static_cast<std::size_t>(n_terms) + 1);
    terms.push_back({0.5 * g2 * Complex(1.0 / std::tan(0.5 * beta * lam), -1.0), lam});
    for (int k = 1; k <= n_terms; ++k) {
        const double nu = 2.0 * kPi * k / beta;
        const double denom = nu * nu - lam * lam;
        if (std::abs(denom) < 1e-10 * lam * lam)
            throw NumericalError("matsubara_expansion: nu_k resonant with Lambda");
        terms.push_back({Complex(2.0 * g2 / beta * nu / denom, 0.0), nu});
    }
    return terms;
}

double terminator_strength(const BathSpec& bath, int n_terms) {
    // sum_{k>=0} c_k / nu_k = \int_0^inf C(t) dt = gamma T - i gamma Lambda / 2
    // exactly for this bath; the imaginary part is carried entirely by the
    // retained Drude term, so the truncated tail is real.
    const auto terms = matsubara_expansion(bath, n_terms);
    double retained = 0.0;
    for (const auto& term : terms) retained += term.coefficient.real() / term.rate;
    return bath.gamma * bath.temperature - retained;
}

}  // namespace pagecurve::spectral

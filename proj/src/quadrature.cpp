#include "pagecurve/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pagecurve::quad {
namespace {

// Gauss-Kronrod 7/15 nodes on [-1,1] (Kronrod abscissae; even entries are
// the embedded Gauss-7 nodes).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename T>
struct Panel {
    double a, b;
    T value;
    double error;
};

template <typename T, typename F>
Panel<T> gk15(const F& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    T fc = f(mid);
    T gauss = kWg[3] * fc;
    T kron = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        T fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    const double diff = std::abs(kron - gauss);
    // QUADPACK-style sharpened estimate; |diff| itself is the safe upper bound.
    const double err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {a, b, kron, err};
}

template <typename T>
[[noreturn]] void throw_nonconvergence(const std::vector<Panel<T>>& panels, double err,
                                       double tol) {
    double worst_err = 0.0, wa = 0.0, wb = 0.0;
    for (const auto& p : panels)
        if (p.error > worst_err) {
            worst_err = p.error;
            wa = p.a;
            wb = p.b;
        }
    std::ostringstream os;
    os << "adaptive quadrature failed to converge: " << panels.size()
       << " subintervals, error estimate " << err << " > tolerance " << tol
       << "; worst subinterval [" << wa << ", " << wb << "] contributes " << worst_err;
    throw NumericalError(os.str());
}

// Pairwise reduction keeps the summation order deterministic and accurate.
template <typename T>
T pairwise_sum(std::vector<T>& v, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return v[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

template <typename T, typename F>
IntegResult<T> adaptive(const F& f, double a, double b, const QuadratureSpec& spec,
                        double extra_error = 0.0) {
    IntegResult<T> out;
    std::vector<Panel<T>> panels;
    std::vector<double> edges = {a, b};
    for (double s : spec.split_points)
        if (s > a && s < b) edges.push_back(s);
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        panels.push_back(gk15<T>(f, edges[i], edges[i + 1]));
        out.evaluations += 15;
    }

    auto total = [&] {
        T v{};
        double e = extra_error;
        for (const auto& p : panels) {
            v += p.value;
            e += p.error;
        }
        return std::pair<T, double>(v, e);
    };

    while (true) {
        auto [value, error] = total();
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
        if (error <= tol) break;
        if (static_cast<int>(panels.size()) >= spec.max_intervals)
            throw_nonconvergence(panels, error, tol);
        auto worst = std::max_element(
            panels.begin(), panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; });
        const Panel<T> p = *worst;
        const double mid = 0.5 * (p.a + p.b);
        if (!(mid > p.a && mid < p.b))  // interval no longer splittable
            throw_nonconvergence(panels, error, tol);
        *worst = gk15<T>(f, p.a, mid);
        panels.push_back(gk15<T>(f, mid, p.b));
        out.evaluations += 30;
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
    std::vector<T> vals(panels.size());
    double err = extra_error;
    for (std::size_t i = 0; i < panels.size(); ++i) {
        vals[i] = panels[i].value;
        err += panels[i].error;
    }
    out.value = pairwise_sum(vals, 0, vals.size());
    out.error = err;
    out.converged = true;
    return out;
}

template <typename T, typename F>
IntegResult<T> semi_infinite(const F& f, const QuadratureSpec& spec) {
    if (spec.tail_exponent > 1.0) {
        // Explicit cutoff: probe |f| ~ C / w^p beyond tail_probe, pick w_max so
        // the analytic tail bound C / ((p-1) w_max^{p-1}) sits below tolerance.
        const double p = spec.tail_exponent;
        const double probe = spec.tail_probe > 0 ? spec.tail_probe : 1.0;
        double coeff = 0.0;
        for (double w : {probe, 2.0 * probe, 4.0 * probe})
            coeff = std::max(coeff, std::abs(f(w)) * std::pow(w, p));
        double w_max = 2.0 * probe;
        double tail = coeff / ((p - 1.0) * std::pow(w_max, p - 1.0));
        const double target = std::max(spec.abs_tol, 1e-3 * spec.rel_tol * coeff / probe);
        while (tail > target && w_max < 1e15) {
            w_max *= 2.0;
            tail = coeff / ((p - 1.0) * std::pow(w_max, p - 1.0));
        }
        return adaptive<T>(f, 0.0, w_max, spec, tail);
    }
    // Compactify w = u/(1-u). Divergent (slower than 1/w^2) integrands blow up
    // near u = 1 and surface as non-convergence.
    auto g = [&f](double u) {
        const double om = 1.0 - u;
        return f(u / om) * (1.0 / (om * om));
    };
    QuadratureSpec mapped = spec;
    mapped.split_points.clear();
    for (double s : spec.split_points)
        if (s > 0) mapped.split_points.push_back(s / (1.0 + s));
    mapped.split_points.push_back(0.5);
    return adaptive<T>(g, 0.0, 1.0, mapped);
}

}  // namespace

Result integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureSpec& spec) {
    return adaptive<double>(f, a, b, spec);
}

ComplexResult integrate(const std::function<Complex(double)>& f, double a, double b,
                        const QuadratureSpec& spec) {
    return adaptive<Complex>(f, a, b, spec);
}

Result integrate_semi_infinite(const std::function<double(double)>& f,
                               const QuadratureSpec& spec) {
    return semi_infinite<double>(f, spec);
}

ComplexResult integrate_semi_infinite(const std::function<Complex(double)>& f,
                                      const QuadratureSpec& spec) {
    return semi_infinite<Complex>(f, spec);
}

CubicRoots cubic_roots(double a3, double a2, double a1, double a0) {
    if (a3 == 0.0) throw std::domain_error("cubic_roots: leading coefficient is zero");
    const double b = a2 / a3, c = a1 / a3, d = a0 / a3;

    Eigen::Matrix3d companion;
    companion << 0, 0, -d,  //
        1, 0, -c,           //
        0, 1, -b;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(companion, /*computeEigenvectors=*/false);

    CubicRoots out;
    for (int i = 0; i < 3; ++i) out.roots[i] = solver.eigenvalues()(i);

    auto poly = [&](Complex s) { return ((s + b) * s + c) * s + d; };
    auto dpoly = [&](Complex s) { return (3.0 * s + 2.0 * b) * s + c; };
    for (auto& s : out.roots) {  // one Newton polish
        const Complex dp = dpoly(s);
        if (std::abs(dp) > 0) s -= poly(s) / dp;
    }

    // Discriminant of the monic cubic decides real-root structure.
    const double disc = 18 * b * c * d - 4 * b * b * b * d + b * b * c * c -
                        4 * c * c * c - 27 * d * d;
    const double scale = std::max({1.0, std::abs(b), std::abs(c), std::abs(d)});
    out.near_degenerate = std::abs(disc) < 1e-12 * std::pow(scale, 4);

    std::sort(out.roots.begin(), out.roots.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    if (disc < 0) {
        // one real root, one conjugate pair: symmetrize against roundoff
        int re = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(out.roots[i].imag()) < std::abs(out.roots[re].imag())) re = i;
        out.roots[re] = Complex(out.roots[re].real(), 0.0);
        const int i1 = (re + 1) % 3, i2 = (re + 2) % 3;
        const double pr = 0.5 * (out.roots[i1].real() + out.roots[i2].real());
        const double pi = 0.5 * std::abs(out.roots[i1].imag() - out.roots[i2].imag());
        out.roots[i1] = Complex(pr, out.roots[i1].imag() < 0 ? -pi : pi);
        out.roots[i2] = std::conj(out.roots[i1]);
    } else if (disc > 0) {
        for (auto& s : out.roots) s = Complex(s.real(), 0.0);  // three real roots
    }
    std::sort(out.roots.begin(), out.roots.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });

    for (const auto& s : out.roots) {
        const double mag = std::max(1.0, std::abs(s));
        out.max_residual =
            std::max(out.max_residual, std::abs(poly(s)) / (scale * mag * mag * mag));
    }
    return out;
}

}  // namespace pagecurve::quad

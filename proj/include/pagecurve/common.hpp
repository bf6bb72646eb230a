#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace pagecurve {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class LogBase { nats, bits };

inline double apply_base(double nats, LogBase base) {
    return base == LogBase::nats ? nats : nats / std::log(2.0);
}

// Numerical failure carrying diagnostics (quadrature breakdown, stiffness, ...).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// A state violating a physical constraint (Heisenberg bound, negative eigenvalue, ...).
class InvalidStateError : public std::runtime_error {
public:
    explicit InvalidStateError(const std::string& what) : std::runtime_error(what) {}
};

// 2x2 complex matrix, row-major. Small enough that value semantics beat
// any linear-algebra library for the hierarchy inner loops.
struct Mat2 {
    std::array<Complex, 4> m{};  // [ m00 m01 ; m10 m11 ]

    Complex& operator()(int r, int c) { return m[2 * r + c]; }
    const Complex& operator()(int r, int c) const { return m[2 * r + c]; }

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {{Complex(1), Complex(0), Complex(0), Complex(1)}}; }

    Complex trace() const { return m[0] + m[3]; }
    Mat2 adjoint() const {
        return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
    }
    double max_abs() const {
        double r = 0;
        for (const auto& v : m) r = std::max(r, std::abs(v));
        return r;
    }
    Mat2& operator+=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] += o.m[i];
        return *this;
    }
    Mat2& operator-=(const Mat2& o) {
        for (int i = 0; i < 4; ++i) m[i] -= o.m[i];
        return *this;
    }
    friend Mat2 operator+(Mat2 a, const Mat2& b) { return a += b; }
    friend Mat2 operator-(Mat2 a, const Mat2& b) { return a -= b; }
    friend Mat2 operator*(Complex s, Mat2 a) {
        for (auto& v : a.m) v *= s;
        return a;
    }
    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {{a.m[0] * b.m[0] + a.m[1] * b.m[2], a.m[0] * b.m[1] + a.m[1] * b.m[3],
                 a.m[2] * b.m[0] + a.m[3] * b.m[2], a.m[2] * b.m[1] + a.m[3] * b.m[3]}};
    }
};

// Eigenvalues of a Hermitian 2x2 (closed form), ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Mat2& rho) {
    const double a = rho.m[0].real();
    const double d = rho.m[3].real();
    const double off = std::abs(rho.m[1]);
    const double s = 0.5 * (a + d);
    const double r = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
    return {s - r, s + r};
}

}  // namespace pagecurve

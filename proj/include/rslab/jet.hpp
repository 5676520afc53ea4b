#pragma once

#include <cmath>

namespace rslab {

/// Value together with its first three derivatives with respect to a single
/// scalar variable. Arithmetic propagates derivatives exactly (truncated
/// Taylor arithmetic), so preset profiles get machine-precision derivatives
/// without hand-differentiated formulas.
struct Jet3 {
    double f = 0.0;   // value
    double d1 = 0.0;  // first derivative
    double d2 = 0.0;  // second derivative
    double d3 = 0.0;  // third derivative

    static Jet3 variable(double x) { return {x, 1.0, 0.0, 0.0}; }
    static Jet3 constant(double c) { return {c, 0.0, 0.0, 0.0}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}
inline Jet3 operator-(const Jet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    // Leibniz up to order 3
    return {a.f * b.f,
            a.d1 * b.f + a.f * b.d1,
            a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
            a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

inline Jet3 operator*(double c, const Jet3& a) { return {c * a.f, c * a.d1, c * a.d2, c * a.d3}; }
inline Jet3 operator*(const Jet3& a, double c) { return c * a; }
inline Jet3 operator+(const Jet3& a, double c) { return {a.f + c, a.d1, a.d2, a.d3}; }
inline Jet3 operator+(double c, const Jet3& a) { return a + c; }
inline Jet3 operator-(const Jet3& a, double c) { return {a.f - c, a.d1, a.d2, a.d3}; }
inline Jet3 operator-(double c, const Jet3& a) { return {c - a.f, -a.d1, -a.d2, -a.d3}; }

/// Chain rule for g(a) given the derivatives of g at a.f.
inline Jet3 compose(double g, double g1, double g2, double g3, const Jet3& a) {
    return {g,
            g1 * a.d1,
            g2 * a.d1 * a.d1 + g1 * a.d2,
            g3 * a.d1 * a.d1 * a.d1 + 3.0 * g2 * a.d1 * a.d2 + g1 * a.d3};
}

inline Jet3 inverse(const Jet3& a) {
    const double x = a.f;
    return compose(1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), -6.0 / (x * x * x * x), a);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * inverse(b); }
inline Jet3 operator/(const Jet3& a, double c) { return (1.0 / c) * a; }
inline Jet3 operator/(double c, const Jet3& a) { return c * inverse(a); }

inline Jet3 exp(const Jet3& a) {
    const double e = std::exp(a.f);
    return compose(e, e, e, e, a);
}

inline Jet3 log(const Jet3& a) {
    const double x = a.f;
    return compose(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x), a);
}

inline Jet3 sinh(const Jet3& a) {
    const double s = std::sinh(a.f), c = std::cosh(a.f);
    return compose(s, c, s, c, a);
}

inline Jet3 cosh(const Jet3& a) {
    const double s = std::sinh(a.f), c = std::cosh(a.f);
    return compose(c, s, c, s, a);
}

inline Jet3 sin(const Jet3& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return compose(s, c, -s, -c, a);
}

inline Jet3 cos(const Jet3& a) {
    const double s = std::sin(a.f), c = std::cos(a.f);
    return compose(c, -s, -c, s, a);
}

/// a^p for constant exponent p, a.f > 0.
inline Jet3 pow(const Jet3& a, double p) {
    const double x = a.f;
    return compose(std::pow(x, p), p * std::pow(x, p - 1.0), p * (p - 1.0) * std::pow(x, p - 2.0),
                   p * (p - 1.0) * (p - 2.0) * std::pow(x, p - 3.0), a);
}

inline Jet3 sqrt(const Jet3& a) { return pow(a, 0.5); }

}  // namespace rslab

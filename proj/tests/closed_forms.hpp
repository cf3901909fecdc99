#pragma once

// Hand-derived |g(jw)| of each built-in loop in real arithmetic, written out
// independently of the generic 1/(1 + G) evaluation.

#include <cmath>
#include <complex>

namespace sensint::oracle {

inline double luyben(double w) {
    const double kp = 0.547, t0 = 0.418, td = 0.1, tau = 1.06;
    const double kc = 1.69, ti = 11.5, tdv = 1.15, al = 0.1;
    const double x = ti * w * w * (1 - al * tdv * tau * w * w);
    const double y = ti * (al * tdv + tau) * w * w * w;
    const double a1 = (ti * t0 + tdv * t0 - ti * tdv) * w * w + 1;
    const double b1 = ti * tdv * t0 * w * w * w + (ti + tdv - t0) * w;
    const double num = ti * w * w * std::sqrt((al * al * tdv * tdv * w * w + 1) * (tau * tau * w * w + 1));
    const double den = x * x + y * y + kp * kp * kc * kc * (a1 * a1 + b1 * b1) -
                       2 * kp * kc * ((a1 * x + b1 * y) * std::cos(td * w) + (b1 * x - a1 * y) * std::sin(td * w));
    return num / std::sqrt(den);
}

inline double pai(double w) {
    const double kp = 0.547, t0 = 0.418, td = 0.1, tau = 1.06;
    const double kc = 4.06, ti = 2.68, tdv = 0.65;
    const double t2 = tau * ti;
    const double a2 = ti * (t0 - tdv) * w * w + 1;
    const double b2 = ti * tdv * t0 * w * w * w + (ti - t0) * w;
    const double q = w * w * t2 * t2 + ti * ti;
    const double den = std::pow(w, 4) * q + kp * kp * kc * kc * (a2 * a2 + b2 * b2) -
                       2 * kp * kc * w * w *
                           ((b2 * w * t2 + a2 * ti) * std::cos(td * w) + (b2 * ti - a2 * w * t2) * std::sin(td * w));
    return w * w * std::sqrt(q) / std::sqrt(den);
}

inline double cstr(double w) {
    const double kp = -0.2679, t0 = 41.6667, a2c = 279.03, a1c = -2.9781, td = 10;
    const double kc = 1.3254, ti = -86.251, tdv = 3.5807, l1 = 5, l2 = 4.112;
    const double w2 = w * w;
    const double x1 = ti * w2 * (l2 * a2c * w2 - l2 - a1c);
    const double y1 = ti * w * (1 - a2c * w2 - l2 * a1c * w2);
    const double a = ti * w2 * (-l1 - tdv + t0 - t0 * l1 * tdv * w2) + t0 * l1 * w2 + 1;
    const double b = ti * w2 * w * (-l1 * tdv + t0 * l1 + t0 * tdv) + w * (l1 + ti - t0);
    const double den = x1 * x1 + y1 * y1 + kp * kp * kc * kc * (a * a + b * b) +
                       2 * kp * kc * ((a * x1 + b * y1) * std::cos(td * w) + (b * x1 - a * y1) * std::sin(td * w));
    return std::sqrt(x1 * x1 + y1 * y1) / std::sqrt(den);
}

inline constexpr double kP = 1, kT1 = 5, kT2 = 2.07, kTd = 0.939;
inline constexpr double kKc = 6.7051, kTi = 5.4738, kTdv = 1.333;

inline double sopdt(double w) {
    const double w2 = w * w;
    const double x2 = kTi * w2 * (kT2 - kT1);
    const double y2 = -kTi * w * (1 + w2 * kT1 * kT2);
    const double x3 = 1 - kTi * kTdv * w2;
    const double num = kTi * w * std::sqrt(w2 * w2 * kT1 * kT1 * kT2 * kT2 + w2 * (kT1 * kT1 + kT2 * kT2) + 1);
    const double den = x2 * x2 + y2 * y2 + kP * kP * kKc * kKc * (x3 * x3 + kTi * kTi * w2) +
                       2 * kP * kKc *
                           ((x3 * x2 + kTi * y2 * w) * std::cos(kTd * w) + (kTi * x2 * w - x3 * y2) * std::sin(kTd * w));
    return num / std::sqrt(den);
}

inline double sopdt_reflected(double w) {
    const double w2 = w * w;
    const double x4 = kTi * w2 * (kT2 + kT1);
    const double y4 = kTi * w * (kT1 * kT2 * w2 - 1);
    const double x5 = 1 - kTi * kTdv * w2;
    const double num = kTi * w * std::sqrt(kT1 * kT1 * kT2 * kT2 * w2 * w2 + (kT1 * kT1 + kT2 * kT2) * w2 + 1);
    const double den = x4 * x4 + y4 * y4 + kP * kP * kKc * kKc * (x5 * x5 + kTi * kTi * w2) -
                       2 * kP * kKc *
                           ((x5 * x4 + y4 * kTi * w) * std::cos(kTd * w) + (x4 * kTi * w - x5 * y4) * std::sin(kTd * w));
    return num / std::sqrt(den);
}

/// kappa * g of the second-order loop at s: the unstable factor mirrored in the numerator.
inline std::complex<double> sopdt_kappa_g(std::complex<double> s) {
    const std::complex<double> pid = 1.0 + kTi * s + kTi * kTdv * s * s;
    return s * kTi * (kT1 * s + 1.0) * (kT2 * s + 1.0) /
           (s * kTi * (kT1 * s - 1.0) * (kT2 * s + 1.0) + kP * kKc * pid * std::exp(-s * kTd));
}

}  // namespace sensint::oracle

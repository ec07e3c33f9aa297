#pragma once

namespace tcelldyn {

/// Cubic Hermite value on [t0, t1] from endpoint values and slopes.
inline double hermite_value(double t0, double x0, double d0, double t1, double x1, double d1,
                            double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double h00 = 2.0 * s3 - 3.0 * s2 + 1.0;
    const double h10 = s3 - 2.0 * s2 + s;
    const double h01 = -2.0 * s3 + 3.0 * s2;
    const double h11 = s3 - s2;
    return h00 * x0 + h10 * h * d0 + h01 * x1 + h11 * h * d1;
}

/// Derivative of the cubic Hermite interpolant at t.
inline double hermite_derivative(double t0, double x0, double d0, double t1, double x1, double d1,
                                 double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double g00 = (6.0 * s2 - 6.0 * s) / h;
    const double g10 = 3.0 * s2 - 4.0 * s + 1.0;
    const double g01 = (-6.0 * s2 + 6.0 * s) / h;
    const double g11 = 3.0 * s2 - 2.0 * s;
    return g00 * x0 + g10 * d0 + g01 * x1 + g11 * d1;
}

}  // namespace tcelldyn

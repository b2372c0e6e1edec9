#pragma once

#include <functional>

namespace phonon {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;   // absolute error estimate
    int subdivisions = 0;
};

/// Adaptive Gauss-Kronrod 7/15 on [a, b]. Bisects the interval with the
/// largest local error estimate until the total estimate satisfies
/// err <= max(rel_tol * |value|, abs_tol). Throws QuadratureError with the
/// achieved estimate attached when the subdivision budget is exhausted.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    double abs_tol = 0.0,
                                    int max_subdivisions = 2000);

} // namespace phonon

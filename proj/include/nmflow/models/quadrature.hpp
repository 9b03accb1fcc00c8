#pragma once

#include <functional>

namespace nmflow::models {

/// Adaptive Gauss-Kronrod (15-point) on [a, b]. `a` may equal `b`.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10);

/// Splits [a, b] into equal panels no wider than `panel` (at most 1e6 of them) and
/// integrates each adaptively. Used for integrands oscillating with a known
/// period so that each panel holds a bounded number of oscillations.
double integrate_panels(const std::function<double(double)>& f, double a, double b, double panel,
                        double rel_tol = 1e-10);

}  // namespace nmflow::models

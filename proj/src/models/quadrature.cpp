#include "nmflow/models/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace nmflow::models {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  return gauss_kronrod<double, 15>::integrate(f, a, b, 20, rel_tol);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, double panel,
                        double rel_tol) {
  if (a == b) return 0.0;
  // Equal-width panels; slivers at the end would defeat the relative tolerance.
  constexpr double kMaxPanels = 1e6;
  const double n = std::min(kMaxPanels, std::max(1.0, std::ceil((b - a) / panel)));
  const auto count = static_cast<long>(n);
  const double width = (b - a) / n;
  double sum = 0.0;
  for (long k = 0; k < count; ++k) {
    const double lo = a + width * k;
    const double hi = k + 1 == count ? b : a + width * (k + 1);
    sum += integrate(f, lo, hi, rel_tol);
  }
  return sum;
}

}  // namespace nmflow::models

#include "nmflow/models/xx_chain.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "nmflow/core/errors.hpp"
#include "nmflow/models/quadrature.hpp"

namespace nmflow::models {
namespace {

// Zeros of J_1(2t) below `t`.
std::vector<double> sign_changes(double t) {
  std::vector<double> z;
  for (unsigned k = 1;; ++k) {
    const double x = 0.5 * boost::math::cyl_bessel_j_zero(1.0, k);
    if (x >= t) break;
    z.push_back(x);
  }
  return z;
}

// int_a^b sigma with the sign of J_1 frozen at the midpoint: [a, b] never
// straddles a zero, so the integrand is smooth.
double piece(double a, double b) {
  if (b <= a) return 0.0;
  const double sgn = boost::math::cyl_bessel_j(1.0, (a + b)) > 0.0 ? 1.0 : -1.0;
  auto f = [sgn](double t) { return t <= 0.0 ? 0.0 : -(2.0 / t) * sgn * boost::math::cyl_bessel_j(2.0, 2.0 * t); };
  if (b - a <= 0.25) return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 0);
  return integrate(f, a, b, 1e-12);
}

}  // namespace

double xx_chain_sigma(double t) {
  if (t <= 0.0) return 0.0;
  const double j1 = boost::math::cyl_bessel_j(1.0, 2.0 * t);
  const double j2 = boost::math::cyl_bessel_j(2.0, 2.0 * t);
  const double sgn = j1 > 0.0 ? 1.0 : (j1 < 0.0 ? -1.0 : 0.0);
  return -(2.0 / t) * sgn * j2;
}

double xx_chain_distance(double t) { return xx_chain_distances({t}).front(); }

std::vector<double> xx_chain_distances(const std::vector<double>& times) {
  if (!std::is_sorted(times.begin(), times.end())) throw InvalidArgument("times must be nondecreasing");
  std::vector<double> out;
  if (times.empty()) return out;
  const auto zeros = sign_changes(times.back());
  std::size_t zi = 0;
  double s = 0.0, at = 0.0;
  for (double t : times) {
    if (t <= 0.0) {
      out.push_back(1.0);
      continue;
    }
    for (; zi < zeros.size() && zeros[zi] < t; ++zi) {
      s += piece(at, zeros[zi]);
      at = zeros[zi];
    }
    s += piece(at, t);
    at = t;
    out.push_back(1.0 + s);
  }
  return out;
}

}  // namespace nmflow::models

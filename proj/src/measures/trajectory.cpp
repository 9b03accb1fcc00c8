#include "nmflow/measures/trajectory.hpp"

#include <cmath>

#include "nmflow/core/errors.hpp"

namespace nmflow::measures {

DistinguishabilityTrajectory DistinguishabilityTrajectory::from_samples(std::vector<double> times,
                                                                        std::vector<double> values) {
  if (times.size() != values.size() || times.size() < 2)
    throw InvalidArgument("trajectory needs at least two samples and matching lengths");
  for (std::size_t k = 1; k < times.size(); ++k)
    if (!(times[k] > times[k - 1])) throw InvalidArgument("trajectory grid must be strictly increasing");
  for (double v : values)
    if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) throw InvalidArgument("trajectory value outside [0, 1]");
  DistinguishabilityTrajectory tr;
  const std::size_t n = times.size();
  tr.derivative.resize(n);
  tr.derivative[0] = (values[1] - values[0]) / (times[1] - times[0]);
  tr.derivative[n - 1] = (values[n - 1] - values[n - 2]) / (times[n - 1] - times[n - 2]);
  for (std::size_t k = 1; k + 1 < n; ++k)
    tr.derivative[k] = (values[k + 1] - values[k - 1]) / (times[k + 1] - times[k - 1]);
  tr.normalization = values[0];
  tr.times = std::move(times);
  tr.values = std::move(values);
  return tr;
}

Backflow positive_variation(const std::vector<double>& times, const std::vector<double>& values,
                            double band) {
  if (times.size() != values.size()) throw DimensionMismatch("times and values differ in length");
  Backflow out;
  if (values.empty()) return out;
  bool rising = false;
  std::size_t lo = 0, hi = 0;  // running min (falling) / max (rising)
  for (std::size_t k = 1; k < values.size(); ++k) {
    const double v = values[k];
    if (!rising) {
      if (v < values[lo]) lo = k;
      else if (v > values[lo] + band) {
        rising = true;
        hi = k;
      }
    } else {
      if (v > values[hi]) hi = k;
      else if (v < values[hi] - band) {
        out.total += values[hi] - values[lo];
        out.intervals.emplace_back(times[lo], times[hi]);
        rising = false;
        lo = k;
      }
    }
  }
  if (rising) {
    out.total += values[hi] - values[lo];
    out.intervals.emplace_back(times[lo], times[hi]);
  }
  return out;
}

std::vector<double> uniform_grid(double horizon, int n) {
  if (!(horizon > 0.0) || n < 3) throw InvalidArgument("time grid needs horizon > 0 and >= 3 points");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = horizon * k / (n - 1);
  return t;
}

}  // namespace nmflow::measures

#include "nmflow/models/spectral_density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "nmflow/core/errors.hpp"

namespace nmflow::models {

SpectralDensity SpectralDensity::ohmic(double coupling, double exponent, double cutoff) {
  if (!(cutoff > 0.0)) throw InvalidArgument("Ohmic cutoff must be strictly positive");
  if (coupling < 0.0) throw InvalidArgument("Ohmic coupling must be nonnegative");
  return SpectralDensity(OhmicFamily{coupling, exponent, cutoff});
}

SpectralDensity SpectralDensity::lorentzian(double gamma0, double width, double detuning,
                                            double omega0) {
  if (!(width > 0.0)) throw InvalidArgument("Lorentzian width must be strictly positive");
  if (gamma0 < 0.0) throw InvalidArgument("Lorentzian coupling must be nonnegative");
  return SpectralDensity(Lorentzian{gamma0, width, detuning, omega0});
}

SpectralDensity SpectralDensity::tabulated(std::vector<double> omega, std::vector<double> value) {
  if (omega.size() != value.size() || omega.size() < 2)
    throw InvalidArgument("tabulated spectral density needs at least two (w, J) samples");
  for (std::size_t i = 1; i < omega.size(); ++i)
    if (!(omega[i] > omega[i - 1])) throw InvalidArgument("tabulated frequencies must increase");
  for (double v : value)
    if (v < 0.0) throw InvalidArgument("spectral density must be nonnegative");
  return SpectralDensity(TabulatedDensity{std::move(omega), std::move(value)});
}

SpectralDensity::Kind SpectralDensity::kind() const noexcept {
  if (std::holds_alternative<OhmicFamily>(params_)) return Kind::ohmic_family;
  if (std::holds_alternative<Lorentzian>(params_)) return Kind::lorentzian;
  return Kind::tabulated;
}

double SpectralDensity::operator()(double w) const {
  if (const auto* o = ohmic_params()) {
    if (w <= 0.0) return 0.0;
    return o->coupling * std::pow(o->cutoff, 1.0 - o->exponent) * std::pow(w, o->exponent) *
           std::exp(-w / o->cutoff);
  }
  if (const auto* l = lorentzian_params()) {
    const double x = l->omega0 + l->detuning - w;
    return l->gamma0 * l->width * l->width / (2.0 * std::numbers::pi * (x * x + l->width * l->width));
  }
  const auto& t = std::get<TabulatedDensity>(params_);
  if (w < t.omega.front() || w > t.omega.back()) return 0.0;
  const auto it = std::upper_bound(t.omega.begin(), t.omega.end(), w);
  if (it == t.omega.end()) return t.value.back();
  const auto i = static_cast<std::size_t>(it - t.omega.begin());
  const double f = (w - t.omega[i - 1]) / (t.omega[i] - t.omega[i - 1]);
  return (1.0 - f) * t.value[i - 1] + f * t.value[i];
}

double SpectralDensity::integration_limit() const {
  if (const auto* o = ohmic_params()) return o->cutoff * (60.0 + 2.0 * std::max(o->exponent, 0.0));
  if (const auto* l = lorentzian_params()) return std::max(0.0, l->omega0 + l->detuning) + 4000.0 * l->width;
  return std::get<TabulatedDensity>(params_).omega.back();
}

double SpectralDensity::frequency_scale() const {
  if (const auto* o = ohmic_params()) return o->cutoff;
  if (const auto* l = lorentzian_params()) return l->width;
  const auto& t = std::get<TabulatedDensity>(params_);
  return t.omega.back() - t.omega.front();
}

}  // namespace nmflow::models

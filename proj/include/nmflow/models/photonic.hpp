#pragma once

#include <string>
#include <vector>

#include "nmflow/core/quantum_map.hpp"
#include "nmflow/models/dephasing.hpp"

namespace nmflow::models {

/// Discrete frequency spectrum |f(w)|^2 with weights summing to 1.
class FrequencySpectrum {
 public:
  /// Throws InvalidArgument for negative weights, size mismatch or a weight
  /// sum off from 1 by more than 1e-9.
  FrequencySpectrum(std::vector<double> omega, std::vector<double> weight);
  /// Rescales the weights to unit sum first.
  static FrequencySpectrum normalized(std::vector<double> omega, std::vector<double> weight);
  /// Two-column text (omega, weight); '#' starts a comment line. Normalises.
  static FrequencySpectrum read(const std::string& path);

  const std::vector<double>& omega() const noexcept { return omega_; }
  const std::vector<double>& weight() const noexcept { return weight_; }
  double mean() const;
  double spread() const;  // standard deviation

 private:
  std::vector<double> omega_;
  std::vector<double> weight_;
};

/// G(t) = sum_k w_k exp(i w_k dn t).
Complex spectrum_dephasing_G(const FrequencySpectrum& f, double delta_n, double t);
DecoherenceFunction spectrum_decoherence(const FrequencySpectrum& f, double delta_n);

/// Tilted Fabry-Perot filter acting on a Gaussian input pulse:
///   |f(w)|^2 ~ exp(-(w - w0)^2 / (2 sigma^2)) / (1 + F sin^2(pi w cos(theta) / fsr)),
/// with w0 an integer multiple of fsr, so at theta = 0 a transmission peak sits
/// on the input centre. Tilting moves order k to k fsr / cos(theta); at
/// cos(theta) = (m - 1/2) fsr / w0 (m = w0 / fsr) orders m - 1 and m straddle w0
/// symmetrically and the spectrum has two equal peaks.
struct FabryPerotParams {
  double center = 100.0;    // w0
  double input_width = 1.0; // sigma
  double fsr = 4.0;
  double finesse = 50.0;    // coefficient F
  double theta = 0.0;       // tilt angle, radians
  int points = 4001;
  double span = 8.0;        // grid covers w0 +- span * sigma
};
FrequencySpectrum fabry_perot_spectrum(const FabryPerotParams& p);

/// Two polarisation qubits (H = 0, V = 1) dephased in birefringent plates.
/// Frequencies are jointly Gaussian with variance C and correlation K.
struct NonlocalPhotonParams {
  double variance;     // C
  double correlation;  // K in [-1, 1]
  double delta_n;
};

/// Two-qubit map after interaction times t1, t2: each matrix element
/// rho_{ab,cd} is multiplied by exp(-C dn^2 (u^2 + v^2 + 2 K u v) / 2) with
/// u = t1 (a - c), v = t2 (b - d).
QuantumMap nonlocal_dephasing_map(const NonlocalPhotonParams& p, double t1, double t2);

/// exp[-dn^2 C (t1^2 + t2^2 + 2 K t1 t2) / 2], trace distance of the Bell pair
/// (|HH> +- |VV>)/sqrt(2).
double nonlocal_bell_distance(const NonlocalPhotonParams& p, double t1, double t2);

enum class PlateSchedule { simultaneous, consecutive };

/// Interaction times at lab time t for plates of duration tau. Simultaneous:
/// t1 = t2 = min(t, tau). Consecutive: photon 2 first (t in [0, tau]), then
/// photon 1 (t in [tau, 2 tau]).
std::pair<double, double> plate_times(PlateSchedule s, double tau, double t);

struct NonlocalTrajectories {
  std::vector<double> times;
  std::vector<double> global;  // Bell pair
  std::vector<double> local1;  // photon 1, |+>/|-> pair
  std::vector<double> local2;
};

/// Evolves the Bell pair and the local equatorial pairs through the maps above
/// and records trace distances on an n-point grid over the whole schedule.
NonlocalTrajectories nonlocal_dephasing_trajectory(const NonlocalPhotonParams& p,
                                                   PlateSchedule s, double tau, int n);

}  // namespace nmflow::models

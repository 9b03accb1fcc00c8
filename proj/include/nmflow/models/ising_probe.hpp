#pragma once

#include <optional>

#include "nmflow/core/linalg.hpp"
#include "nmflow/models/dephasing.hpp"

namespace nmflow::models {

/// Probe qubit coupled to a periodic transverse-field Ising ring of N spins,
///   H_E = -J sum_j (sz_j sz_{j+1} + lambda sx_j),   H_I = -J delta |e><e| sum_j sx_j.
/// The excited branch therefore feels the field lambda + delta.
struct SpinChainSpec {
  int n = 8;
  double coupling = 1.0;  // J
  double field = 0.5;     // lambda of H_E
  double delta = 0.1;
  /// Initial environment vector in the computational basis (bit j = spin j,
  /// bit set = spin down). Ground state of H_E when absent.
  std::optional<CVector> initial_state;
};

inline constexpr int kMaxIsingSpins = 12;

/// Dense H_E on the full 2^N space (test oracle and fallback path).
RMatrix ising_hamiltonian(int n, double coupling, double field);

/// G(t) = <Phi| e^{i H_g t} e^{-i H_e t} |Phi> by exact diagonalisation.
///
/// With the default ground-state environment, both branches preserve the
/// global spin-flip parity and the ground state lies in the even sector, so
/// the problem is diagonalised on the 2^(N-1)-dimensional even subspace.
/// A tabulated initial vector uses the full space and is limited to N <= 10.
class IsingProbe {
 public:
  explicit IsingProbe(SpinChainSpec spec);

  const SpinChainSpec& spec() const noexcept { return spec_; }
  Complex G(double t) const;
  Complex G_derivative(double t) const;
  /// Loschmidt echo |G|^2.
  double loschmidt(double t) const { return std::norm(G(t)); }
  DecoherenceFunction decoherence() const;

 private:
  SpinChainSpec spec_;
  // Spectral data of both branches, projected on |Phi>:
  //   e^{-iHt}|Phi> = sum_k c_k e^{-iE_k t} |k>.
  RVector energies_e_;
  CVector coeff_e_;
  RVector energies_g_;
  CMatrix vectors_g_, vectors_e_;
  CVector coeff_g_;
  bool ground_state_mode_ = true;
  double ground_energy_ = 0.0;
};

}  // namespace nmflow::models

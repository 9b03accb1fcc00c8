#pragma once

#include <optional>
#include <vector>

#include "nmflow/core/density_matrix.hpp"
#include "nmflow/core/linalg.hpp"
#include "nmflow/core/quantum_map.hpp"

namespace nmflow::correlations {

inline constexpr int kMaxTotalDimension = 4096;

/// H = H_S (x) I_E + I_S (x) H_E + H_I on S (x) E (S is the left factor).
class TotalSystem {
 public:
  /// Throws DimensionMismatch / InvalidArgument for inconsistent or
  /// non-Hermitian parts, or a composite dimension above the cap.
  TotalSystem(int dim_s, int dim_e, const CMatrix& h_s, const CMatrix& h_e, const CMatrix& h_i);

  int dim_s() const noexcept { return dim_s_; }
  int dim_e() const noexcept { return dim_e_; }
  int dim() const noexcept { return dim_s_ * dim_e_; }
  const CMatrix& hamiltonian() const noexcept { return h_; }

  /// U(t) from the cached eigendecomposition.
  CMatrix propagator(double t) const;
  CMatrix evolve(const CMatrix& rho, double t) const;

 private:
  int dim_s_, dim_e_;
  CMatrix h_;
  CMatrix vectors_;
  RVector energies_;
};

struct TotalTrajectory {
  std::vector<double> times;
  std::vector<CMatrix> total, system, environment;
  /// max_t ||U^dag U - I||_max.
  double unitarity_drift = 0.0;
};

TotalTrajectory evolve_total(const TotalSystem& ts, const DensityMatrix& rho_se,
                             const std::vector<double>& times);

struct InfoFlowRecord {
  std::vector<double> times;
  std::vector<double> i_int, i_ext;
  /// D(rho_SE^k, rho_S^k (x) rho_E^k) for k = 1, 2, and D(rho_E^1, rho_E^2).
  std::vector<double> correlation1, correlation2, environment_distance;
  /// max_t |I_int(t) + I_ext(t) - I_int(0) - I_ext(0)|.
  double conservation_error = 0.0;
  /// min_t of (bound - I_ext); negative means the bound failed.
  double bound_slack = 0.0;
  bool bound_holds = true;
};

InfoFlowRecord info_flow(const TotalSystem& ts, const DensityMatrix& rho1, const DensityMatrix& rho2,
                         const std::vector<double>& times, double tol = 1e-9);

/// (Lambda (x) I_E) rho for a map acting on S.
CMatrix apply_local(const QuantumMap& lambda, const CMatrix& rho, int dim_s, int dim_e);

struct WitnessResult {
  std::vector<double> times;
  /// D(rho_S^1(t), rho_S^2(t)) - D(rho_S^1(0), rho_S^2(0)).
  std::vector<double> excursion;
  double max_excursion = 0.0;
  bool witness = false;
};

/// Second reference state rho^2 = (Lambda (x) I) rho^1; witness when the
/// reduced trace distance exceeds its initial value by more than `tol`.
WitnessResult initial_correlation_witness(const TotalSystem& ts, const DensityMatrix& rho1,
                                          const QuantumMap& lambda, const std::vector<double>& times,
                                          double tol = 1e-8);

struct DiscordBound {
  double lower_bound = 0.0;  // max_t D(rho_S^1(t), rho_S^2(t))
  double c = 0.0;            // D(rho^1, (Lambda (x) I) rho^1)
  CMatrix basis;             // dephasing basis (columns)
};

/// Lambda = complete dephasing in the eigenbasis of rho_S^1(0), or in
/// `basis` when given (needed for degenerate marginals). Throws
/// DegenerateBasis when the eigenbasis is ambiguous (eigenvalue gap below
/// `degeneracy_tol`) and no basis is supplied, and InvalidState if the bound
/// exceeds C by more than 1e-9.
DiscordBound discord_lower_bound(const TotalSystem& ts, const DensityMatrix& rho1,
                                 const std::vector<double>& times,
                                 const std::optional<CMatrix>& basis = std::nullopt,
                                 double degeneracy_tol = 1e-9);

/// Projective dephasing map in the basis given by the columns of `basis`.
QuantumMap dephasing_in_basis(const CMatrix& basis);

}  // namespace nmflow::correlations

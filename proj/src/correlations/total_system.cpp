#include "nmflow/correlations/total_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nmflow/core/errors.hpp"
#include "nmflow/core/metrics.hpp"

namespace nmflow::correlations {
namespace {

void check_part(const CMatrix& h, int dim, const char* name) {
  if (h.rows() != dim || h.cols() != dim) {
    std::ostringstream os;
    os << name << " must be " << dim << "x" << dim << ", got " << h.rows() << "x" << h.cols();
    throw DimensionMismatch(os.str());
  }
  if (hermiticity_defect(h) > 1e-12) throw InvalidArgument(std::string(name) + " is not Hermitian");
}

CMatrix hermitize(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

}  // namespace

TotalSystem::TotalSystem(int dim_s, int dim_e, const CMatrix& h_s, const CMatrix& h_e,
                         const CMatrix& h_i)
    : dim_s_(dim_s), dim_e_(dim_e) {
  if (dim_s < 1 || dim_e < 1) throw InvalidArgument("subsystem dimensions must be positive");
  if (static_cast<long>(dim_s) * dim_e > kMaxTotalDimension) {
    std::ostringstream os;
    os << "composite dimension " << static_cast<long>(dim_s) * dim_e << " exceeds the cap "
       << kMaxTotalDimension;
    throw InvalidArgument(os.str());
  }
  check_part(h_s, dim_s, "H_S");
  check_part(h_e, dim_e, "H_E");
  check_part(h_i, dim_s * dim_e, "H_I");
  h_ = kron(h_s, CMatrix::Identity(dim_e, dim_e)) + kron(CMatrix::Identity(dim_s, dim_s), h_e) + h_i;
  h_ = hermitize(h_);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h_);
  if (es.info() != Eigen::Success) throw Error("total Hamiltonian eigensolver failed");
  vectors_ = es.eigenvectors();
  energies_ = es.eigenvalues();
}

CMatrix TotalSystem::propagator(double t) const {
  CVector phases(energies_.size());
  for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::exp(-kI * energies_(k) * t);
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

CMatrix TotalSystem::evolve(const CMatrix& rho, double t) const {
  if (rho.rows() != dim() || rho.cols() != dim()) throw DimensionMismatch("total state has the wrong size");
  const CMatrix u = propagator(t);
  return hermitize(u * rho * u.adjoint());
}

TotalTrajectory evolve_total(const TotalSystem& ts, const DensityMatrix& rho_se,
                             const std::vector<double>& times) {
  if (rho_se.dim() != ts.dim()) throw DimensionMismatch("total state dimension does not match the system");
  TotalTrajectory tr;
  tr.times = times;
  const CMatrix id = CMatrix::Identity(ts.dim(), ts.dim());
  for (double t : times) {
    const CMatrix u = ts.propagator(t);
    tr.unitarity_drift = std::max(tr.unitarity_drift, (u.adjoint() * u - id).cwiseAbs().maxCoeff());
    const CMatrix r = hermitize(u * rho_se.matrix() * u.adjoint());
    tr.system.push_back(partial_trace_b(r, ts.dim_s(), ts.dim_e()));
    tr.environment.push_back(partial_trace_a(r, ts.dim_s(), ts.dim_e()));
    tr.total.push_back(r);
  }
  return tr;
}

InfoFlowRecord info_flow(const TotalSystem& ts, const DensityMatrix& rho1, const DensityMatrix& rho2,
                         const std::vector<double>& times, double tol) {
  if (times.empty()) throw InvalidArgument("info_flow needs at least one time");
  const auto a = evolve_total(ts, rho1, times);
  const auto b = evolve_total(ts, rho2, times);
  InfoFlowRecord r;
  r.times = times;
  r.bound_slack = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    const double d_total = trace_distance(a.total[k], b.total[k]);
    const double d_s = trace_distance(a.system[k], b.system[k]);
    r.i_int.push_back(d_s);
    r.i_ext.push_back(d_total - d_s);
    r.correlation1.push_back(trace_distance(a.total[k], kron(a.system[k], a.environment[k])));
    r.correlation2.push_back(trace_distance(b.total[k], kron(b.system[k], b.environment[k])));
    r.environment_distance.push_back(trace_distance(a.environment[k], b.environment[k]));
    const double bound = r.correlation1.back() + r.correlation2.back() + r.environment_distance.back();
    r.bound_slack = std::min(r.bound_slack, bound - r.i_ext.back());
    r.conservation_error = std::max(
        r.conservation_error, std::abs(r.i_int[k] + r.i_ext[k] - r.i_int[0] - r.i_ext[0]));
  }
  r.bound_holds = r.bound_slack >= -tol;
  return r;
}

CMatrix apply_local(const QuantumMap& lambda, const CMatrix& rho, int dim_s, int dim_e) {
  if (lambda.dim_in() != dim_s || lambda.dim_out() != dim_s)
    throw DimensionMismatch("local map must act on the system factor");
  if (rho.rows() != dim_s * dim_e) throw DimensionMismatch("total state has the wrong size");
  const std::vector<CMatrix> ks = lambda.kraus() ? *lambda.kraus() : kraus_from_choi(lambda);
  const CMatrix ie = CMatrix::Identity(dim_e, dim_e);
  CMatrix out = CMatrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : ks) {
    const CMatrix kk = kron(k, ie);
    out += kk * rho * kk.adjoint();
  }
  return hermitize(out);
}

WitnessResult initial_correlation_witness(const TotalSystem& ts, const DensityMatrix& rho1,
                                          const QuantumMap& lambda, const std::vector<double>& times,
                                          double tol) {
  if (times.empty()) throw InvalidArgument("witness needs at least one time");
  const DensityMatrix rho2(apply_local(lambda, rho1.matrix(), ts.dim_s(), ts.dim_e()));
  const auto a = evolve_total(ts, rho1, times);
  const auto b = evolve_total(ts, rho2, times);
  const double d0 = trace_distance(partial_trace_b(rho1.matrix(), ts.dim_s(), ts.dim_e()),
                                   partial_trace_b(rho2.matrix(), ts.dim_s(), ts.dim_e()));
  WitnessResult w;
  w.times = times;
  w.max_excursion = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < times.size(); ++k) {
    w.excursion.push_back(trace_distance(a.system[k], b.system[k]) - d0);
    w.max_excursion = std::max(w.max_excursion, w.excursion.back());
  }
  w.witness = w.max_excursion > tol;
  return w;
}

QuantumMap dephasing_in_basis(const CMatrix& basis) {
  if (basis.rows() != basis.cols()) throw DimensionMismatch("basis must be square");
  if (!(basis.adjoint() * basis).isIdentity(1e-10)) throw InvalidArgument("dephasing basis is not orthonormal");
  std::vector<CMatrix> ks;
  for (Eigen::Index i = 0; i < basis.cols(); ++i) ks.push_back(basis.col(i) * basis.col(i).adjoint());
  return QuantumMap::from_kraus(std::move(ks));
}

DiscordBound discord_lower_bound(const TotalSystem& ts, const DensityMatrix& rho1,
                                 const std::vector<double>& times, const std::optional<CMatrix>& basis,
                                 double degeneracy_tol) {
  DiscordBound out;
  if (basis) {
    out.basis = *basis;
  } else {
    const CMatrix rs = partial_trace_b(rho1.matrix(), ts.dim_s(), ts.dim_e());
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitize(rs));
    const RVector ev = es.eigenvalues();
    for (Eigen::Index i = 1; i < ev.size(); ++i)
      if (ev(i) - ev(i - 1) < degeneracy_tol) {
        std::ostringstream os;
        os << "reduced state has degenerate eigenvalues (gap " << ev(i) - ev(i - 1)
           << "); pass an explicit dephasing basis";
        throw DegenerateBasis(os.str());
      }
    out.basis = es.eigenvectors();
  }
  const QuantumMap lambda = dephasing_in_basis(out.basis);
  const CMatrix dephased = apply_local(lambda, rho1.matrix(), ts.dim_s(), ts.dim_e());
  out.c = trace_distance(rho1.matrix(), dephased);
  const auto w = initial_correlation_witness(ts, rho1, lambda, times, 0.0);
  // D(0) = 0 when dephasing in the eigenbasis, so the excursion is the distance itself.
  const double d0 = trace_distance(partial_trace_b(rho1.matrix(), ts.dim_s(), ts.dim_e()),
                                   partial_trace_b(dephased, ts.dim_s(), ts.dim_e()));
  out.lower_bound = w.max_excursion + d0;
  if (out.lower_bound > out.c + 1e-9) {
    std::ostringstream os;
    os << "discord lower bound " << out.lower_bound << " exceeds C = " << out.c;
    throw InvalidState(os.str());
  }
  return out;
}

}  // namespace nmflow::correlations

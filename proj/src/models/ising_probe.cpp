#include "nmflow/models/ising_probe.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "nmflow/core/errors.hpp"

namespace nmflow::models {
namespace {

int bit(unsigned s, int j) { return (s >> j) & 1u; }

double zz_energy(unsigned s, int n) {
  double e = 0.0;
  for (int j = 0; j < n; ++j) e += bit(s, j) == bit(s, (j + 1) % n) ? 1.0 : -1.0;
  return e;
}

// Even-parity sector: basis (|s> + |~s>)/sqrt(2) for s with the top bit clear.
RMatrix even_sector_hamiltonian(int n, double coupling, double field) {
  const unsigned full = (1u << n) - 1u;
  const int dim = 1 << (n - 1);
  const unsigned top = 1u << (n - 1);
  RMatrix h = RMatrix::Zero(dim, dim);
  for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
    h(s, s) = -coupling * zz_energy(s, n);
    for (int j = 0; j < n; ++j) {
      unsigned f = s ^ (1u << j);
      if (f & top) f = full ^ f;
      h(f, s) += -coupling * field;
    }
  }
  return h;
}

void check_spec(const SpinChainSpec& s) {
  if (s.n < 2 || s.n > kMaxIsingSpins) {
    std::ostringstream os;
    os << "Ising ring size N = " << s.n << " outside [2, " << kMaxIsingSpins << "]";
    throw InvalidArgument(os.str());
  }
  if (!(s.coupling > 0.0)) throw InvalidArgument("Ising coupling J must be positive");
  if (!std::isfinite(s.field) || !std::isfinite(s.delta))
    throw InvalidArgument("Ising field and probe coupling must be finite");
}

}  // namespace

RMatrix ising_hamiltonian(int n, double coupling, double field) {
  if (n < 1 || n > kMaxIsingSpins) throw InvalidArgument("Ising ring size out of range");
  const int dim = 1 << n;
  RMatrix h = RMatrix::Zero(dim, dim);
  for (unsigned s = 0; s < static_cast<unsigned>(dim); ++s) {
    h(s, s) = -coupling * zz_energy(s, n);
    for (int j = 0; j < n; ++j) h(s ^ (1u << j), s) += -coupling * field;
  }
  return h;
}

IsingProbe::IsingProbe(SpinChainSpec spec) : spec_(std::move(spec)) {
  check_spec(spec_);
  const double lam_g = spec_.field;
  const double lam_e = spec_.field + spec_.delta;
  if (!spec_.initial_state) {
    Eigen::SelfAdjointEigenSolver<RMatrix> eg(even_sector_hamiltonian(spec_.n, spec_.coupling, lam_g));
    Eigen::SelfAdjointEigenSolver<RMatrix> ee(even_sector_hamiltonian(spec_.n, spec_.coupling, lam_e));
    if (eg.info() != Eigen::Success || ee.info() != Eigen::Success)
      throw Error("Ising eigensolver failed");
    ground_energy_ = eg.eigenvalues()(0);
    const RVector phi = eg.eigenvectors().col(0);
    energies_e_ = ee.eigenvalues();
    coeff_e_ = (ee.eigenvectors().transpose() * phi).cast<Complex>();
    return;
  }
  if (spec_.n > 10) throw InvalidArgument("tabulated Ising initial states are limited to N <= 10");
  const CVector& phi = *spec_.initial_state;
  if (phi.size() != (1 << spec_.n))
    throw DimensionMismatch("Ising initial state length must be 2^N");
  if (std::abs(phi.norm() - 1.0) > 1e-10) throw InvalidState("Ising initial state is not normalised");
  ground_state_mode_ = false;
  Eigen::SelfAdjointEigenSolver<RMatrix> eg(ising_hamiltonian(spec_.n, spec_.coupling, lam_g));
  Eigen::SelfAdjointEigenSolver<RMatrix> ee(ising_hamiltonian(spec_.n, spec_.coupling, lam_e));
  energies_g_ = eg.eigenvalues();
  energies_e_ = ee.eigenvalues();
  vectors_g_ = eg.eigenvectors().cast<Complex>();
  vectors_e_ = ee.eigenvectors().cast<Complex>();
  coeff_g_ = vectors_g_.adjoint() * phi;
  coeff_e_ = vectors_e_.adjoint() * phi;
}

Complex IsingProbe::G(double t) const {
  if (ground_state_mode_) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < energies_e_.size(); ++k)
      s += std::norm(coeff_e_(k)) * std::exp(-kI * (energies_e_(k) - ground_energy_) * t);
    return s;
  }
  CVector a(coeff_e_.size()), b(coeff_g_.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) a(k) = coeff_e_(k) * std::exp(-kI * energies_e_(k) * t);
  for (Eigen::Index k = 0; k < b.size(); ++k) b(k) = coeff_g_(k) * std::exp(-kI * energies_g_(k) * t);
  return (vectors_g_ * b).dot(vectors_e_ * a);
}

Complex IsingProbe::G_derivative(double t) const {
  if (ground_state_mode_) {
    Complex s = 0.0;
    for (Eigen::Index k = 0; k < energies_e_.size(); ++k) {
      const double w = energies_e_(k) - ground_energy_;
      s += -kI * w * std::norm(coeff_e_(k)) * std::exp(-kI * w * t);
    }
    return s;
  }
  CVector a(coeff_e_.size()), b(coeff_g_.size()), da(coeff_e_.size()), db(coeff_g_.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    a(k) = coeff_e_(k) * std::exp(-kI * energies_e_(k) * t);
    da(k) = -kI * energies_e_(k) * a(k);
  }
  for (Eigen::Index k = 0; k < b.size(); ++k) {
    b(k) = coeff_g_(k) * std::exp(-kI * energies_g_(k) * t);
    db(k) = -kI * energies_g_(k) * b(k);
  }
  const CVector va = vectors_e_ * a, vb = vectors_g_ * b;
  return (vectors_g_ * db).dot(va) + vb.dot(vectors_e_ * da);
}

DecoherenceFunction IsingProbe::decoherence() const {
  DecoherenceFunction g;
  auto self = std::make_shared<IsingProbe>(*this);
  g.value = [self](double t) { return self->G(t); };
  g.derivative = [self](double t) { return self->G_derivative(t); };
  g.provenance = Provenance::loschmidt_ed;
  g.time_scale = 1.0 / spec_.coupling;
  return g;
}

}  // namespace nmflow::models

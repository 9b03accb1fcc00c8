#include "nmflow/core/generator.hpp"

#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "nmflow/core/errors.hpp"

namespace nmflow {

TimeLocalGenerator::TimeLocalGenerator(int dim, HamiltonianFn hamiltonian,
                                       std::vector<DecayChannel> channels, const Tolerances& tol)
    : dim_(dim), hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {
  if (dim <= 0) throw InvalidArgument("generator dimension must be positive");
  for (const auto& c : channels_) {
    if (c.op.rows() != dim || c.op.cols() != dim)
      throw DimensionMismatch("Lindblad operator dimension does not match generator");
    if (!c.rate) throw InvalidArgument("decay channel without a rate function");
  }
  if (!channels_.empty()) {
    const auto n = static_cast<Eigen::Index>(channels_.size());
    CMatrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        gram(i, j) = (channels_[i].op.adjoint() * channels_[j].op).trace();
    const double lmin = hermitian_eigenvalues(gram)(0);
    if (lmin < tol.generator_independence) {
      std::ostringstream os;
      os << "Lindblad operators are linearly dependent (Gram eigenvalue " << lmin << ")";
      throw InvalidArgument(os.str());
    }
  }
  const CMatrix h0 = this->hamiltonian(0.0);
  if (hermiticity_defect(h0) > tol.hermitian) throw InvalidArgument("Hamiltonian is not Hermitian");
}

CMatrix TimeLocalGenerator::hamiltonian(double t) const {
  if (!hamiltonian_) return CMatrix::Zero(dim_, dim_);
  return hamiltonian_(t);
}

std::vector<double> TimeLocalGenerator::rates(double t) const {
  std::vector<double> out;
  out.reserve(channels_.size());
  for (const auto& c : channels_) out.push_back(c.rate(t));
  return out;
}

CMatrix TimeLocalGenerator::apply(double t, const CMatrix& rho) const {
  const CMatrix h = hamiltonian(t);
  CMatrix out = -kI * (h * rho - rho * h);
  for (const auto& c : channels_) {
    const double g = c.rate(t);
    if (g == 0.0) continue;
    const CMatrix ada = c.op.adjoint() * c.op;
    out += g * (c.op * rho * c.op.adjoint() - 0.5 * (ada * rho + rho * ada));
  }
  return out;
}

CMatrix TimeLocalGenerator::superoperator(double t) const {
  const int n = dim_ * dim_;
  CMatrix s(n, n);
  for (int k = 0; k < n; ++k) {
    CMatrix unit = CMatrix::Zero(dim_, dim_);
    unit(k % dim_, k / dim_) = 1.0;
    const CMatrix img = apply(t, unit);
    s.col(k) = Eigen::Map<const CVector>(img.data(), n);
  }
  return s;
}

std::vector<CMatrix> TimeLocalGenerator::evolve(const CMatrix& rho0, double t0,
                                                const std::vector<double>& times, double rel_tol,
                                                double abs_tol) const {
  namespace odeint = boost::numeric::odeint;
  using State = std::vector<double>;
  const int n = dim_ * dim_;
  auto pack = [n](const CMatrix& m) {
    State s(2 * n);
    for (int k = 0; k < n; ++k) {
      s[2 * k] = m.data()[k].real();
      s[2 * k + 1] = m.data()[k].imag();
    }
    return s;
  };
  auto unpack = [this, n](const State& s) {
    CMatrix m(dim_, dim_);
    for (int k = 0; k < n; ++k) m.data()[k] = Complex(s[2 * k], s[2 * k + 1]);
    return m;
  };
  auto rhs = [&](const State& x, State& dxdt, double t) {
    dxdt = pack(apply(t, unpack(x)));
  };
  State x = pack(rho0);
  double t = t0;
  std::vector<CMatrix> out;
  out.reserve(times.size());
  auto stepper = odeint::make_dense_output(abs_tol, rel_tol, odeint::runge_kutta_dopri5<State>());
  for (double target : times) {
    if (target < t) throw InvalidArgument("evolve: times must be nondecreasing");
    if (target > t) {
      odeint::integrate_adaptive(stepper, rhs, x, t, target, (target - t) / 10.0);
      t = target;
    }
    out.push_back(unpack(x));
  }
  return out;
}

}  // namespace nmflow

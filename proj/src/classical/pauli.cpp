#include "nmflow/classical/pauli.hpp"

#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "nmflow/core/errors.hpp"

namespace nmflow::classical {

RateMatrix RateMatrix::constant(const RMatrix& w) {
  if (w.rows() != w.cols() || w.rows() == 0) throw DimensionMismatch("rate matrix must be square");
  return {static_cast<int>(w.rows()), [w](double) { return w; }};
}

RMatrix RateMatrix::generator(double t) const {
  RMatrix w_t = w(t);
  if (w_t.rows() != n_states || w_t.cols() != n_states)
    throw DimensionMismatch("rate function returned a matrix of the wrong size");
  w_t.diagonal().setZero();
  RMatrix q = w_t;
  for (int z = 0; z < n_states; ++z) q(z, z) = -w_t.col(z).sum();
  return q;
}

void RateMatrix::validate(const std::vector<double>& times, double tol) const {
  for (double t : times) {
    const RMatrix m = w(t);
    for (int x = 0; x < n_states; ++x)
      for (int z = 0; z < n_states; ++z)
        if (x != z && m(x, z) < -tol) {
          std::ostringstream os;
          os << "negative jump rate W(" << x << ", " << z << ") = " << m(x, z) << " at t = " << t;
          throw InvalidArgument(os.str());
        }
  }
}

TransitionMatrix::TransitionMatrix(RMatrix t) : t_(std::move(t)) {
  if (t_.rows() != t_.cols()) throw DimensionMismatch("transition matrix must be square");
  for (Eigen::Index c = 0; c < t_.cols(); ++c) {
    if (std::abs(t_.col(c).sum() - 1.0) > 1e-12)
      throw InvalidArgument("transition matrix column does not sum to 1");
    if (t_.col(c).minCoeff() < -1e-9 || t_.col(c).maxCoeff() > 1.0 + 1e-9)
      throw InvalidArgument("transition matrix entry outside [0, 1]");
  }
}

std::vector<RVector> pauli_evolve(const RateMatrix& w, const RVector& p0,
                                  const std::vector<double>& times, double t0) {
  namespace odeint = boost::numeric::odeint;
  if (p0.size() != w.n_states) throw DimensionMismatch("initial distribution has the wrong length");
  if (std::abs(p0.sum() - 1.0) > 1e-12 || p0.minCoeff() < 0.0)
    throw InvalidArgument("initial distribution is not normalised");
  w.validate(times);
  using State = std::vector<double>;
  State x(p0.data(), p0.data() + p0.size());
  auto rhs = [&](const State& s, State& ds, double t) {
    const RMatrix q = w.generator(t);
    const RVector d = q * Eigen::Map<const RVector>(s.data(), s.size());
    ds.assign(d.data(), d.data() + d.size());
  };
  auto stepper = odeint::make_dense_output(1e-13, 1e-11, odeint::runge_kutta_dopri5<State>());
  std::vector<RVector> out;
  double t = t0;
  for (double target : times) {
    if (target < t) throw InvalidArgument("pauli_evolve: times must be nondecreasing and >= t0");
    if (target > t) {
      odeint::integrate_adaptive(stepper, rhs, x, t, target, (target - t) / 10.0);
      t = target;
    }
    out.emplace_back(Eigen::Map<const RVector>(x.data(), x.size()));
  }
  return out;
}

TransitionMatrix transition_matrix(const RateMatrix& w, double t, double s) {
  if (t < s) throw InvalidArgument("transition matrix needs t >= s");
  RMatrix m(w.n_states, w.n_states);
  for (int y = 0; y < w.n_states; ++y) {
    const RVector delta = RVector::Unit(w.n_states, y);
    m.col(y) = pauli_evolve(w, delta, {t}, s).back();
  }
  return TransitionMatrix(m);
}

double kolmogorov_distance(const RVector& a, const RVector& b, double p1, double p2) {
  if (a.size() != b.size()) throw DimensionMismatch("distributions differ in length");
  if (std::abs(p1 + p2 - 1.0) > 1e-12 || p1 < 0.0 || p2 < 0.0)
    throw InvalidArgument("weights must be probabilities summing to 1");
  return (p1 * a - p2 * b).cwiseAbs().sum();
}

RateMatrix quantum_to_classical(const TimeLocalGenerator& gen, const CMatrix& basis,
                                const std::vector<double>& check_times) {
  const int d = gen.dim();
  if (basis.rows() != d || basis.cols() != d) throw DimensionMismatch("basis has the wrong size");
  if (!(basis.adjoint() * basis).isIdentity(1e-10)) throw InvalidArgument("basis is not orthonormal");
  for (double t : check_times) {
    for (int m = 0; m < d; ++m) {
      const CMatrix proj = basis.col(m) * basis.col(m).adjoint();
      CMatrix img = basis.adjoint() * gen.apply(t, proj) * basis;
      img.diagonal().setZero();
      if (img.cwiseAbs().maxCoeff() > 1e-10) {
        std::ostringstream os;
        os << "generator does not preserve diagonal states in the given basis (leakage "
           << img.cwiseAbs().maxCoeff() << " at t = " << t << ")";
        throw InvalidArgument(os.str());
      }
    }
  }
  std::vector<RMatrix> weights;
  for (const auto& c : gen.channels()) {
    const CMatrix a = basis.adjoint() * c.op * basis;
    weights.push_back(a.cwiseAbs2());
  }
  return {d, [gen, weights, d](double t) {
            const auto g = gen.rates(t);
            RMatrix w = RMatrix::Zero(d, d);
            for (std::size_t i = 0; i < g.size(); ++i) w += g[i] * weights[i];
            w.diagonal().setZero();
            return w;
          }};
}

}  // namespace nmflow::classical

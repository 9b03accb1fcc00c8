#pragma once

#include <random>

#include "nmflow/core/density_matrix.hpp"
#include "nmflow/core/linalg.hpp"
#include "nmflow/core/quantum_map.hpp"

namespace nmflow::testing {

inline DensityMatrix random_state(int dim, std::mt19937_64& rng) {
  // Mixture of a Haar pure state and the maximally mixed state with a random weight.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const CVector psi = random_pure_vector(dim, rng);
  const double w = u(rng);
  CMatrix m = w * psi * psi.adjoint() + (1.0 - w) * CMatrix::Identity(dim, dim) / double(dim);
  return DensityMatrix(m);
}

inline QuantumMap random_cptp_qubit(std::mt19937_64& rng) {
  // Stinespring dilation: random unitary on qubit (x) 2-dim ancilla, ancilla in |0>.
  const CMatrix u = random_unitary(4, rng);
  std::vector<CMatrix> ks;
  for (int a = 0; a < 2; ++a) {
    CMatrix k(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) k(i, j) = u(i * 2 + a, j * 2 + 0);
    ks.push_back(k);
  }
  return QuantumMap::from_kraus(ks);
}

}  // namespace nmflow::testing

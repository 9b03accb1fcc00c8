#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace nmflow {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

namespace pauli {
CMatrix identity();
CMatrix x();
CMatrix y();
CMatrix z();
/// sigma_- = |0><1| in the basis {|0> = ground, |1> = excited}.
CMatrix lowering();
CMatrix raising();
/// sigma_i for i = 0..3 with sigma_0 the identity.
CMatrix by_index(int i);
}  // namespace pauli

CMatrix kron(const CMatrix& a, const CMatrix& b);

/// max |a_ij - conj(a_ji)|.
double hermiticity_defect(const CMatrix& a);

/// Ascending eigenvalues of the Hermitian part of `a`.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Sum of singular values. Hermitian input (within 1e-12) goes through the
/// symmetric eigensolver, anything else through an SVD.
double trace_norm(const CMatrix& a);

/// tr_B of an operator on H_A (x) H_B.
CMatrix partial_trace_b(const CMatrix& rho, int dim_a, int dim_b);
/// tr_A of an operator on H_A (x) H_B.
CMatrix partial_trace_a(const CMatrix& rho, int dim_a, int dim_b);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix.
CMatrix random_unitary(int dim, std::mt19937_64& rng);
/// Haar-random pure state vector.
CVector random_pure_vector(int dim, std::mt19937_64& rng);

/// exp(-i H t) for Hermitian H via its eigendecomposition.
CMatrix unitary_propagator(const CMatrix& hamiltonian, double t);

}  // namespace nmflow

#pragma once

#include "qree/state.hpp"
#include "qree/types.hpp"

namespace qree {

/// -sum_i lambda_i log2 lambda_i over the eigenvalues, with 0 log 0 = 0.
Bits von_neumann_entropy(const QuantumState& rho);

/// tr(sigma log2 sigma - sigma log2 rho); +infinity when sigma has weight
/// above 1e-9 outside the support of rho (eigenvalues of rho below
/// 1e-12 * lambda_max count as zero).
Bits quantum_relative_entropy(const QuantumState& sigma, const QuantumState& rho);

/// Binary entropy h(p) in bits.
double binary_entropy(double p);

// Raw-matrix versions for hot paths; inputs are assumed hermitian.
double von_neumann_entropy_matrix(const Matrix& rho);
double relative_entropy_matrix(const Matrix& sigma, const Matrix& rho);

}  // namespace qree

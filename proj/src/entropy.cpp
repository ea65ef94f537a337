#include "qree/entropy.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qree {

namespace {

constexpr double kEigenvalueFloor = 1e-15;
// Eigenvalues of rho below 1e-12 * lambda_max count as zero support.
constexpr double kSupportRatio = 1e-12;
constexpr double kNullWeightTol = 1e-9;

double log2_clamped(double x) { return std::log2(x); }

}  // namespace

double binary_entropy(double p) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("binary_entropy: p must lie in [0, 1]");
  }
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

double von_neumann_entropy_matrix(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                           Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda > kEigenvalueFloor) {
      s -= lambda * log2_clamped(lambda);
    }
  }
  return s;
}

double relative_entropy_matrix(const Matrix& sigma, const Matrix& rho) {
  // tr sigma log2 sigma
  double tr_sigma_log_sigma = 0.0;
  {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (sigma + sigma.adjoint()),
                                             Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const double lambda = es.eigenvalues()(i);
      if (lambda > kEigenvalueFloor) {
        tr_sigma_log_sigma += lambda * log2_clamped(lambda);
      }
    }
  }

  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
  const auto& mu = es.eigenvalues();
  const double support_tol = kSupportRatio * std::max(mu.maxCoeff(), 0.0);

  double tr_sigma_log_rho = 0.0;
  double null_weight = 0.0;
  for (Eigen::Index j = 0; j < mu.size(); ++j) {
    const Vector v = es.eigenvectors().col(j);
    const double w = std::real(v.dot(sigma * v));  // <v|sigma|v>
    if (mu(j) <= support_tol) {
      null_weight += std::max(w, 0.0);
    } else {
      tr_sigma_log_rho += w * log2_clamped(mu(j));
    }
  }
  if (null_weight > kNullWeightTol) {
    return std::numeric_limits<double>::infinity();
  }
  return tr_sigma_log_sigma - tr_sigma_log_rho;
}

Bits von_neumann_entropy(const QuantumState& rho) {
  return Bits(von_neumann_entropy_matrix(rho.matrix()));
}

Bits quantum_relative_entropy(const QuantumState& sigma, const QuantumState& rho) {
  if (!(sigma.structure() == rho.structure())) {
    throw std::invalid_argument("quantum_relative_entropy: party structures differ");
  }
  const double value = relative_entropy_matrix(sigma.matrix(), rho.matrix());
  if (!std::isfinite(value)) {
    return Bits::infinity();
  }
  return Bits(value);
}

}  // namespace qree

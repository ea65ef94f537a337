#include "qree/ensemble.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace qree {

namespace {
constexpr double kEnsembleTol = 1e-10;
}

SeparableEnsemble::SeparableEnsemble(PartyStructure structure, std::vector<ProductTerm> terms)
    : structure_(std::move(structure)), terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw std::invalid_argument("SeparableEnsemble: needs at least one term");
  }
  double weight_sum = 0.0;
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const ProductTerm& term = terms_[k];
    if (term.weight < 0.0) {
      throw std::invalid_argument("SeparableEnsemble: terms[" + std::to_string(k) +
                                  "] has negative weight");
    }
    weight_sum += term.weight;
    if (static_cast<int>(term.factors.size()) != structure_.parties()) {
      throw std::invalid_argument("SeparableEnsemble: terms[" + std::to_string(k) +
                                  "] needs one factor per party");
    }
    for (int p = 0; p < structure_.parties(); ++p) {
      const Vector& f = term.factors[p];
      if (f.size() != structure_.dim(p)) {
        throw std::invalid_argument("SeparableEnsemble: terms[" + std::to_string(k) +
                                    "] factor " + std::to_string(p) + " has wrong dimension");
      }
      if (std::abs(f.norm() - 1.0) > kEnsembleTol) {
        throw std::invalid_argument("SeparableEnsemble: terms[" + std::to_string(k) +
                                    "] factor " + std::to_string(p) + " is not normalized");
      }
    }
  }
  if (std::abs(weight_sum - 1.0) > kEnsembleTol) {
    throw std::invalid_argument("SeparableEnsemble: weights sum to " +
                                std::to_string(weight_sum) + ", expected 1");
  }
}

QuantumState ensemble_to_state(const SeparableEnsemble& ensemble) {
  const int d = ensemble.structure().total_dim();
  Matrix rho = Matrix::Zero(d, d);
  for (const ProductTerm& term : ensemble.terms()) {
    const Vector v = product_vector(ensemble.structure(), term.factors);
    rho.noalias() += term.weight * (v * v.adjoint());
  }
  rho = 0.5 * (rho + rho.adjoint());
  return QuantumState(ensemble.structure(), std::move(rho));
}

SeparableEnsemble random_separable_ensemble(const PartyStructure& structure, int terms,
                                            Rng& rng) {
  if (terms < 1) {
    throw std::invalid_argument("random_separable_ensemble: terms must be >= 1");
  }
  std::vector<ProductTerm> out(static_cast<std::size_t>(terms));
  double weight_sum = 0.0;
  for (ProductTerm& term : out) {
    // Exponential weights normalize to a flat Dirichlet over the simplex.
    double u = rng.uniform();
    while (u <= 0.0) u = rng.uniform();
    term.weight = -std::log(u);
    weight_sum += term.weight;
    term.factors.reserve(structure.parties());
    for (int p = 0; p < structure.parties(); ++p) {
      Vector f(structure.dim(p));
      for (Eigen::Index i = 0; i < f.size(); ++i) {
        f(i) = rng.complex_normal();
      }
      f /= f.norm();
      term.factors.push_back(std::move(f));
    }
  }
  for (ProductTerm& term : out) {
    term.weight /= weight_sum;
  }
  return SeparableEnsemble(structure, std::move(out));
}

}  // namespace qree

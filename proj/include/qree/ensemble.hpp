#pragma once

#include "qree/random.hpp"
#include "qree/state.hpp"
#include "qree/types.hpp"

#include <vector>

namespace qree {

struct ProductTerm {
  double weight = 0.0;
  std::vector<Vector> factors;  // one normalized local vector per party
};

/// Finite convex mixture of product pure states; parametrizes a fully
/// separable density matrix. Weights must sum to 1 within 1e-10 and every
/// factor must be normalized within 1e-10.
class SeparableEnsemble {
 public:
  SeparableEnsemble(PartyStructure structure, std::vector<ProductTerm> terms);

  const PartyStructure& structure() const { return structure_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }
  int size() const { return static_cast<int>(terms_.size()); }

 private:
  PartyStructure structure_;
  std::vector<ProductTerm> terms_;
};

/// sum_k p_k |a_k><a_k| with a_k the product of the term's factors.
QuantumState ensemble_to_state(const SeparableEnsemble& ensemble);

/// Flat-simplex weights, Haar-random local factors.
SeparableEnsemble random_separable_ensemble(const PartyStructure& structure, int terms, Rng& rng);

}  // namespace qree

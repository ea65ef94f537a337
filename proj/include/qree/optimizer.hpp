#pragma once

#include "qree/ensemble.hpp"
#include "qree/state.hpp"
#include "qree/types.hpp"

#include <cstdint>
#include <vector>

namespace qree {

struct OptimizerConfig {
  /// Cap on the number of ensemble terms. 0 picks the default 4*D.
  int ensemble_size = 0;
  int max_outer_iterations = 2000;
  /// Stop when the objective improves by less than this over one
  /// reoptimization cycle (10 outer iterations), in bits.
  double value_tolerance = 1e-7;
  int restarts = 8;
  /// Random initializations for the inner product-state subproblem.
  int inner_starts = 16;
  std::uint64_t seed = 0;
  /// The objective is evaluated at (1-eps) rho + eps I/D; the worst-case
  /// shift eps log2(D) + h(eps) is folded into gap_estimate.
  double support_floor = 1e-9;
};

/// Derived config for a nested optimizer call; keeps seed substreams of
/// sibling computations disjoint and reproducible.
OptimizerConfig with_derived_seed(const OptimizerConfig& cfg, std::uint64_t counter);

struct ReeResult {
  Bits value;
  SeparableEnsemble closest;
  /// Heuristic certificate: final Frank-Wolfe duality gap (the inner linear
  /// subproblem is nonconvex and solved by multi-start, so this is not a
  /// proof) plus the support-floor correction. Bits, nonnegative.
  double gap_estimate = 0.0;
  int iterations_used = 0;
  /// Restarts whose final value landed within max(1e-6, 10*value_tolerance)
  /// of the best one.
  int restarts_agreeing = 0;
};

/// E_n(sigma): minimum of S(sigma||rho) over fully separable rho, by
/// conditional-gradient descent over product-state ensembles. The outer loop
/// alternates Frank-Wolfe steps (gradient, best product state against it,
/// exact line search) with a weights-only exponentiated-gradient
/// reoptimization every 10 iterations; terms below 1e-12 are pruned and the
/// ensemble is capped at ensemble_size by dropping the lightest terms.
/// Deterministic for a fixed seed and config; best value over all restarts.
ReeResult relative_entropy_of_entanglement(const QuantumState& sigma,
                                           const OptimizerConfig& cfg = {});

/// Two disjoint party blocks covering the whole structure.
struct Bipartition {
  std::vector<int> block_a;
  std::vector<int> block_b;
};

/// Analytic REE of a pure state across a bipartition: the entropy of the
/// reduction. Validation oracle for the optimizer.
Bits pure_state_ree_oracle(const PureState& psi, const Bipartition& cut);

}  // namespace qree

#pragma once

#include "qree/ensemble.hpp"
#include "qree/optimizer.hpp"
#include "qree/state.hpp"
#include "qree/types.hpp"

#include <string>
#include <utility>

namespace qree {

/// Two bound values within this distance (bits) count as tied or saturated.
inline constexpr double kSaturationTolBits = 5e-3;

struct BoundsReport {
  std::string state_label;
  Bits e3_estimate;          // E_n from the optimizer
  double gap_estimate = 0.0; // its certificate, carried for slack checks
  Bits lower_thm1;
  std::string lower_witness;
  Bits upper_thm1;
  std::string upper_witness;
  Bits corollary_lower;
  Bits corollary_upper;
  Bits conjecture_half_sum;
  double slack_lower = 0.0;  // e3_estimate - lower_thm1
  double slack_upper = 0.0;  // upper_thm1 - e3_estimate
  bool saturated_lower = false;
  bool saturated_upper = false;
};

/// max over pairs of E_2(pair reduction) + S(pair reduction) for a pure
/// tripartite state, with the maximizing pair label ("AB"/"AC"/"BC").
/// Ties within 5e-3 keep the earlier pair.
std::pair<Bits, std::string> lower_bound_theorem1(const PureState& psi,
                                                  const OptimizerConfig& cfg);

/// min over pairs of S(single) + S(single); witness is the first pair
/// within 5e-3 of the minimum.
std::pair<Bits, std::string> upper_bound_theorem1(const PureState& psi);

/// lower = (E_2(AB)+E_2(AC)+E_2(BC))/3 + (S_A+S_B+S_C)/3,
/// upper = 2(S_A+S_B+S_C)/3.
std::pair<Bits, Bits> corollary_bounds(const PureState& psi, const OptimizerConfig& cfg);

/// (S_A+S_B+S_C)/2: the conjectured sharper upper bound. A value of
/// e3_estimate above it by more than the optimizer gap would be a
/// counterexample candidate.
Bits conjecture_half_sum(const PureState& psi);

/// Full report for an n-party pure state, n >= 3. Upper bound: cheapest
/// preparing party, min over X of sum_{Y != X} S(Y). Lower bound: peel one
/// party, max over X of E_{n-1}(trace-out-X) + S(trace-out-X). Corollary
/// fields hold the averages of the n peel terms and ((n-1)/n) sum S.
/// Reduces to the tripartite forms at n = 3.
BoundsReport nparty_bounds(const PureState& psi, const OptimizerConfig& cfg,
                           const std::string& label = "");

/// [S(sigma||rho) - S(sigma_A||rho_A)] - [S(sigma_A) - S(sigma_AB)] for a
/// bipartite sigma and separable rho; nonnegative up to float noise.
/// +infinity (inequality trivially satisfied) on support mismatch.
double verify_inequality_bi(const QuantumState& sigma, const SeparableEnsemble& rho);

/// Tripartite version: [S(sigma||rho) - S(sigma_AB||rho_AB)] -
/// [S(sigma_AB) - S(sigma_ABC)].
double verify_inequality_tri(const QuantumState& sigma, const SeparableEnsemble& rho);

}  // namespace qree

#pragma once

#include "qree/optimizer.hpp"
#include "qree/state.hpp"
#include "qree/types.hpp"

#include <string>

namespace qree {

/// Solution of the GHZ-plus-singlet accounting equations
///   S_A = g + s_ab + s_ac   (and cyclically for B, C)
/// for a tripartite pure state, with the pair rates fixed to single-copy
/// E_2 of the two-party reductions. The single-copy value stands in for the
/// regularized one, hence the approximation marker on every output.
struct MregsDecomposition {
  double g = 0.0;     // GHZ rate
  double s_ab = 0.0;  // singlet rates
  double s_ac = 0.0;
  double s_bc = 0.0;
  /// Max disagreement of the three per-party solutions for g from their
  /// mean, in bits. Not clamped; a large value is evidence against the
  /// single-copy proxy.
  double residual = 0.0;
  Bits predicted_e3;  // g + s_ab + s_ac + s_bc
  std::string approximation = "single-copy";
};

MregsDecomposition mregs_decompose(const PureState& psi, const OptimizerConfig& cfg);

/// (E_2(AB)+E_2(AC)+E_2(BC))/3 + (S_A+S_B+S_C)/3. Algebraically equal to
/// MregsDecomposition::predicted_e3 when the entropy equations are exactly
/// consistent; computed on an independent path as a cross-check.
Bits predicted_e3_average_form(const PureState& psi, const OptimizerConfig& cfg);

}  // namespace qree

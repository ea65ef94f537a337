#include "qree/mregs.hpp"

#include "qree/entropy.hpp"

#include <cmath>
#include <stdexcept>

namespace qree {

namespace {

struct PairRates {
  double s_ab = 0.0, s_ac = 0.0, s_bc = 0.0;
};

// Single-copy E_2 of the three two-party reductions. Seed counters 1..3
// follow the AB, AC, BC order shared with the bounds module, so both see
// bitwise-identical optimizer results for the same config.
PairRates pair_rates(const QuantumState& full, const OptimizerConfig& cfg) {
  const auto e2 = [&](std::initializer_list<int> keep, std::uint64_t counter) {
    const std::vector<int> keep_v(keep);
    return relative_entropy_of_entanglement(partial_trace(full, keep_v),
                                            with_derived_seed(cfg, counter))
        .value.value();
  };
  PairRates rates;
  rates.s_ab = e2({0, 1}, 1);
  rates.s_ac = e2({0, 2}, 2);
  rates.s_bc = e2({1, 2}, 3);
  return rates;
}

double single_entropy(const QuantumState& full, int party) {
  const int keep[] = {party};
  return von_neumann_entropy(partial_trace(full, keep)).value();
}

void require_tripartite(const PureState& psi, const char* what) {
  if (psi.structure().parties() != 3) {
    throw std::invalid_argument(std::string(what) + ": state must have exactly 3 parties");
  }
}

}  // namespace

MregsDecomposition mregs_decompose(const PureState& psi, const OptimizerConfig& cfg) {
  require_tripartite(psi, "mregs_decompose");
  const QuantumState full = from_pure(psi);
  const PairRates rates = pair_rates(full, cfg);
  const double s_a = single_entropy(full, 0);
  const double s_b = single_entropy(full, 1);
  const double s_c = single_entropy(full, 2);

  // Each entropy equation solved for g on its own; the mean is reported and
  // the spread becomes the residual.
  const double g_candidates[3] = {
      s_a - rates.s_ab - rates.s_ac,
      s_b - rates.s_ab - rates.s_bc,
      s_c - rates.s_ac - rates.s_bc,
  };
  const double g = (g_candidates[0] + g_candidates[1] + g_candidates[2]) / 3.0;
  double residual = 0.0;
  for (double candidate : g_candidates) {
    residual = std::max(residual, std::abs(candidate - g));
  }

  MregsDecomposition out;
  out.g = g;
  out.s_ab = rates.s_ab;
  out.s_ac = rates.s_ac;
  out.s_bc = rates.s_bc;
  out.residual = residual;
  out.predicted_e3 = Bits(std::max(0.0, g + rates.s_ab + rates.s_ac + rates.s_bc));
  return out;
}

Bits predicted_e3_average_form(const PureState& psi, const OptimizerConfig& cfg) {
  require_tripartite(psi, "predicted_e3_average_form");
  const QuantumState full = from_pure(psi);
  const PairRates rates = pair_rates(full, cfg);
  const double sum_singles =
      single_entropy(full, 0) + single_entropy(full, 1) + single_entropy(full, 2);
  return Bits((rates.s_ab + rates.s_ac + rates.s_bc) / 3.0 + sum_singles / 3.0);
}

}  // namespace qree

#include "qree/bounds.hpp"

#include "qree/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace qree {

namespace {

std::string party_letters(const std::vector<int>& parties) {
  std::string label;
  for (int p : parties) {
    label += static_cast<char>('A' + p);
  }
  return label;
}

// Kept subsets of size n-1, ordered so their labels come out lexicographic
// (AB, AC, BC for n = 3). Nested optimizer calls take seed counter 1 + index
// in this order; counter 0 is the full-state run.
std::vector<std::vector<int>> peel_subsets(int n) {
  std::vector<std::vector<int>> subsets;
  for (int removed = n - 1; removed >= 0; --removed) {
    std::vector<int> keep;
    for (int p = 0; p < n; ++p) {
      if (p != removed) keep.push_back(p);
    }
    subsets.push_back(std::move(keep));
  }
  return subsets;
}

struct PeelTerm {
  std::vector<int> keep;
  double e_reduced = 0.0;    // E_{n-1} of the reduction
  double s_reduced = 0.0;    // entropy of the reduction
  double gap = 0.0;
  double sum() const { return e_reduced + s_reduced; }
};

std::vector<PeelTerm> peel_terms(const QuantumState& full, const OptimizerConfig& cfg) {
  const int n = full.structure().parties();
  std::vector<PeelTerm> terms;
  std::uint64_t counter = 1;
  for (auto& keep : peel_subsets(n)) {
    PeelTerm term;
    term.keep = keep;
    const QuantumState reduced = partial_trace(full, term.keep);
    const ReeResult ree =
        relative_entropy_of_entanglement(reduced, with_derived_seed(cfg, counter++));
    term.e_reduced = ree.value.value();
    term.gap = ree.gap_estimate;
    term.s_reduced = von_neumann_entropy(reduced).value();
    terms.push_back(std::move(term));
  }
  return terms;
}

std::vector<double> single_party_entropies(const QuantumState& full) {
  std::vector<double> s;
  for (int p = 0; p < full.structure().parties(); ++p) {
    const int keep[] = {p};
    s.push_back(von_neumann_entropy(partial_trace(full, keep)).value());
  }
  return s;
}

void require_parties(const PureState& psi, int n, const char* what) {
  if (psi.structure().parties() != n) {
    throw std::invalid_argument(std::string(what) + ": state must have exactly " +
                                std::to_string(n) + " parties");
  }
}

}  // namespace

namespace {

// Earliest index whose value sits within the tie tolerance of the optimum;
// the bound itself is the exact optimum.
std::size_t witness_index(const std::vector<double>& values, double optimum) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::abs(values[i] - optimum) < kSaturationTolBits) return i;
  }
  return 0;
}

}  // namespace

std::pair<Bits, std::string> lower_bound_theorem1(const PureState& psi,
                                                  const OptimizerConfig& cfg) {
  require_parties(psi, 3, "lower_bound_theorem1");
  const QuantumState full = from_pure(psi);
  const auto terms = peel_terms(full, cfg);
  std::vector<double> sums;
  for (const PeelTerm& t : terms) sums.push_back(t.sum());
  const double best = *std::max_element(sums.begin(), sums.end());
  return {Bits(best), party_letters(terms[witness_index(sums, best)].keep)};
}

std::pair<Bits, std::string> upper_bound_theorem1(const PureState& psi) {
  require_parties(psi, 3, "upper_bound_theorem1");
  const QuantumState full = from_pure(psi);
  const auto singles = single_party_entropies(full);
  const auto subsets = peel_subsets(3);
  std::vector<double> sums;
  for (const auto& subset : subsets) {
    sums.push_back(singles[subset[0]] + singles[subset[1]]);
  }
  const double best = *std::min_element(sums.begin(), sums.end());
  return {Bits(best), party_letters(subsets[witness_index(sums, best)])};
}

std::pair<Bits, Bits> corollary_bounds(const PureState& psi, const OptimizerConfig& cfg) {
  require_parties(psi, 3, "corollary_bounds");
  const QuantumState full = from_pure(psi);
  const auto singles = single_party_entropies(full);
  const double sum_singles = singles[0] + singles[1] + singles[2];

  double sum_e2 = 0.0;
  std::uint64_t counter = 1;
  for (auto& keep : peel_subsets(3)) {
    const ReeResult ree = relative_entropy_of_entanglement(partial_trace(full, keep),
                                                           with_derived_seed(cfg, counter++));
    sum_e2 += ree.value.value();
  }
  return {Bits(sum_e2 / 3.0 + sum_singles / 3.0), Bits(2.0 * sum_singles / 3.0)};
}

Bits conjecture_half_sum(const PureState& psi) {
  require_parties(psi, 3, "conjecture_half_sum");
  const auto singles = single_party_entropies(from_pure(psi));
  return Bits(0.5 * (singles[0] + singles[1] + singles[2]));
}

BoundsReport nparty_bounds(const PureState& psi, const OptimizerConfig& cfg,
                           const std::string& label) {
  const int n = psi.structure().parties();
  if (n < 3) {
    throw std::invalid_argument("nparty_bounds: state must have at least 3 parties");
  }
  const QuantumState full = from_pure(psi);

  const ReeResult full_ree = relative_entropy_of_entanglement(full, with_derived_seed(cfg, 0));
  const auto singles = single_party_entropies(full);
  const double sum_singles =
      std::accumulate(singles.begin(), singles.end(), 0.0);
  const auto peels = peel_terms(full, cfg);
  const auto subsets = peel_subsets(n);

  // Lower: best peel. The witness keeps the earliest subset within 5e-3.
  std::vector<double> peel_sums;
  for (const PeelTerm& t : peels) peel_sums.push_back(t.sum());
  const double lower = *std::max_element(peel_sums.begin(), peel_sums.end());
  const std::size_t lower_idx = witness_index(peel_sums, lower);

  // Upper: cheapest preparing party; the witness lists the receivers.
  std::vector<double> receiver_sums;
  for (const auto& subset : subsets) {
    double sum = 0.0;
    for (int p : subset) sum += singles[p];
    receiver_sums.push_back(sum);
  }
  const double upper = *std::min_element(receiver_sums.begin(), receiver_sums.end());
  const std::size_t upper_idx = witness_index(receiver_sums, upper);

  double corollary_lower = 0.0;
  for (const PeelTerm& t : peels) corollary_lower += t.sum();
  corollary_lower /= n;

  BoundsReport report;
  report.state_label = label;
  report.e3_estimate = full_ree.value;
  report.gap_estimate = full_ree.gap_estimate;
  report.lower_thm1 = Bits(lower);
  report.lower_witness = party_letters(peels[lower_idx].keep);
  report.upper_thm1 = Bits(upper);
  report.upper_witness = party_letters(subsets[upper_idx]);
  report.corollary_lower = Bits(corollary_lower);
  report.corollary_upper = Bits((n - 1) * sum_singles / n);
  report.conjecture_half_sum = Bits(0.5 * sum_singles);
  report.slack_lower = report.e3_estimate.value() - report.lower_thm1.value();
  report.slack_upper = report.upper_thm1.value() - report.e3_estimate.value();
  report.saturated_lower = std::abs(report.slack_lower) < kSaturationTolBits;
  report.saturated_upper = std::abs(report.slack_upper) < kSaturationTolBits;
  return report;
}

namespace {

double inequality_expression(const QuantumState& sigma, const SeparableEnsemble& rho_ensemble,
                             int parties, const char* what) {
  if (sigma.structure().parties() != parties) {
    throw std::invalid_argument(std::string(what) + ": state must have exactly " +
                                std::to_string(parties) + " parties");
  }
  if (!(sigma.structure() == rho_ensemble.structure())) {
    throw std::invalid_argument(std::string(what) + ": sigma and rho structures differ");
  }
  const QuantumState rho = ensemble_to_state(rho_ensemble);

  // Reduce both sides by dropping the last party.
  std::vector<int> keep;
  for (int p = 0; p + 1 < parties; ++p) keep.push_back(p);
  const QuantumState sigma_red = partial_trace(sigma, keep);
  const QuantumState rho_red = partial_trace(rho, keep);

  const Bits full_term = quantum_relative_entropy(sigma, rho);
  if (!full_term.is_finite()) {
    return std::numeric_limits<double>::infinity();
  }
  const Bits red_term = quantum_relative_entropy(sigma_red, rho_red);
  if (!red_term.is_finite()) {
    return std::numeric_limits<double>::infinity();
  }
  const double s_red = von_neumann_entropy(sigma_red).value();
  const double s_full = von_neumann_entropy(sigma).value();
  return (full_term.value() - red_term.value()) - (s_red - s_full);
}

}  // namespace

double verify_inequality_bi(const QuantumState& sigma, const SeparableEnsemble& rho) {
  return inequality_expression(sigma, rho, 2, "verify_inequality_bi");
}

double verify_inequality_tri(const QuantumState& sigma, const SeparableEnsemble& rho) {
  return inequality_expression(sigma, rho, 3, "verify_inequality_tri");
}

}  // namespace qree

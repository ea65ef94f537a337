#include "qree/scan.hpp"

#include "qree/random.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace qree {

ScanResult scan_haar_tripartite(int samples, std::uint64_t seed, const OptimizerConfig& cfg) {
  if (samples < 1) {
    throw std::invalid_argument("scan_haar_tripartite: samples must be >= 1");
  }
  const PartyStructure structure({2, 2, 2});

  ScanResult result;
  result.rows.reserve(static_cast<std::size_t>(samples));
  result.summary.samples = samples;
  result.summary.min_slack_lower = std::numeric_limits<double>::infinity();
  result.summary.min_slack_upper = std::numeric_limits<double>::infinity();

  for (int i = 0; i < samples; ++i) {
    ScanRow row;
    row.sample = i;
    row.state_seed = derive_seed(seed, 2 * static_cast<std::uint64_t>(i));

    const PureState psi = haar_random_pure(structure, row.state_seed);
    OptimizerConfig sample_cfg = cfg;
    sample_cfg.seed = derive_seed(seed, 2 * static_cast<std::uint64_t>(i) + 1);
    row.report = nparty_bounds(psi, sample_cfg, "haar:" + std::to_string(row.state_seed));

    // Conjecture check; a candidate violation earns a re-run at 4x restarts
    // before it is reported. The sharper estimate replaces the row either way.
    if (row.report.e3_estimate.value() > row.report.conjecture_half_sum.value() +
                                             row.report.gap_estimate + kSaturationTolBits) {
      OptimizerConfig retry_cfg = sample_cfg;
      retry_cfg.restarts = 4 * sample_cfg.restarts;
      row.report = nparty_bounds(psi, retry_cfg, row.report.state_label);
      if (row.report.e3_estimate.value() > row.report.conjecture_half_sum.value() +
                                               row.report.gap_estimate + kSaturationTolBits) {
        row.conjecture_candidate = true;
        result.summary.conjecture_candidates.push_back(i);
      }
    }

    const double tol = row.report.gap_estimate + kSaturationTolBits;
    if (row.report.slack_lower < -tol || row.report.slack_upper < -tol) {
      ++result.summary.sandwich_violations;
    }

    result.summary.min_slack_lower =
        std::min(result.summary.min_slack_lower, row.report.slack_lower);
    result.summary.min_slack_upper =
        std::min(result.summary.min_slack_upper, row.report.slack_upper);
    result.rows.push_back(std::move(row));
  }
  return result;
}

VerifySummary verify_inequalities(int samples, std::uint64_t seed) {
  if (samples < 1) {
    throw std::invalid_argument("verify_inequalities: samples must be >= 1");
  }
  const PartyStructure bi_structure({2, 2});
  const PartyStructure tri_structure({2, 2, 2});

  VerifySummary summary;
  summary.samples = samples;
  summary.min_bi = std::numeric_limits<double>::infinity();
  summary.min_tri = std::numeric_limits<double>::infinity();

  for (int i = 0; i < samples; ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));

    const QuantumState sigma_bi = random_density(bi_structure, bi_structure.total_dim(), rng);
    const SeparableEnsemble rho_bi =
        random_separable_ensemble(bi_structure, 2 * bi_structure.total_dim(), rng);
    const double value_bi = verify_inequality_bi(sigma_bi, rho_bi);
    summary.min_bi = std::min(summary.min_bi, value_bi);
    if (value_bi < -1e-8) ++summary.violations_bi;

    const QuantumState sigma_tri =
        random_density(tri_structure, tri_structure.total_dim(), rng);
    const SeparableEnsemble rho_tri =
        random_separable_ensemble(tri_structure, 2 * tri_structure.total_dim(), rng);
    const double value_tri = verify_inequality_tri(sigma_tri, rho_tri);
    summary.min_tri = std::min(summary.min_tri, value_tri);
    if (value_tri < -1e-8) ++summary.violations_tri;
  }
  return summary;
}

}  // namespace qree

#pragma once

#include "qree/bounds.hpp"
#include "qree/optimizer.hpp"

#include <cstdint>
#include <vector>

namespace qree {

struct ScanRow {
  int sample = 0;
  std::uint64_t state_seed = 0;
  BoundsReport report;
  /// Set when e3 exceeded the half-sum bound beyond gap + 5e-3 and the
  /// violation survived a re-run at 4x restarts.
  bool conjecture_candidate = false;
};

struct ScanSummary {
  int samples = 0;
  double min_slack_lower = 0.0;
  double min_slack_upper = 0.0;
  int sandwich_violations = 0;
  std::vector<int> conjecture_candidates;  // sample indices
};

struct ScanResult {
  std::vector<ScanRow> rows;
  ScanSummary summary;
};

/// Haar-random 2x2x2 pure states, one BoundsReport per sample. Sample i uses
/// state seed derive_seed(seed, 2i) and optimizer seed derive_seed(seed,
/// 2i+1), so any row can be reproduced on its own. Conjecture violation
/// candidates are re-run at 4x restarts before being reported; they are
/// never dropped.
ScanResult scan_haar_tripartite(int samples, std::uint64_t seed, const OptimizerConfig& cfg);

struct VerifySummary {
  int samples = 0;
  double min_bi = 0.0;
  double min_tri = 0.0;
  int violations_bi = 0;   // below -1e-8
  int violations_tri = 0;
};

/// Monte-Carlo run of the bi- and tripartite relative-entropy inequalities
/// on random (state, separable ensemble) pairs.
VerifySummary verify_inequalities(int samples, std::uint64_t seed);

}  // namespace qree

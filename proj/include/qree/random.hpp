#pragma once

#include "qree/state.hpp"
#include "qree/types.hpp"

#include <cstdint>
#include <random>

namespace qree {

/// SplitMix64 mixing step.
std::uint64_t splitmix64(std::uint64_t& state);

/// Counter-based seed splitter: independent substream seed for (base, counter).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter);

/// Seeded generator with platform-independent output (mt19937_64 plus an
/// explicit Box-Muller transform; no implementation-defined distributions).
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();  // [0, 1)
  double normal();   // standard normal
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed pure state: normalized vector of iid complex Gaussians.
PureState haar_random_pure(const PartyStructure& structure, Rng& rng);
PureState haar_random_pure(const PartyStructure& structure, std::uint64_t seed);

/// GG^dagger / tr(GG^dagger) with G a D x rank Gaussian matrix.
QuantumState random_density(const PartyStructure& structure, int rank, Rng& rng);

}  // namespace qree

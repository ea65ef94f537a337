#include "qree/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qree {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t counter) {
  std::uint64_t state = base ^ (counter * 0xD1B54A32D192ED03ULL);
  std::uint64_t mixed = splitmix64(state);
  return splitmix64(state) ^ mixed;
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

double Rng::uniform() {
  // 53 random bits into [0, 1); bit-for-bit reproducible everywhere.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im);
}

PureState haar_random_pure(const PartyStructure& structure, Rng& rng) {
  Vector amps(structure.total_dim());
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    amps(i) = rng.complex_normal();
  }
  amps /= amps.norm();
  return PureState(structure, std::move(amps));
}

PureState haar_random_pure(const PartyStructure& structure, std::uint64_t seed) {
  Rng rng(seed);
  return haar_random_pure(structure, rng);
}

QuantumState random_density(const PartyStructure& structure, int rank, Rng& rng) {
  const int d = structure.total_dim();
  if (rank < 1 || rank > d) {
    throw std::invalid_argument("random_density: rank must lie in [1, D]");
  }
  Matrix g(d, rank);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) {
      g(i, j) = rng.complex_normal();
    }
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint());
  return QuantumState(structure, std::move(rho));
}

}  // namespace qree

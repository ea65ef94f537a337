#pragma once

#include "qree/types.hpp"

#include <span>
#include <string>

namespace qree {

/// Normalized state vector with explicit party structure.
class PureState {
 public:
  PureState(PartyStructure structure, Vector amplitudes);

  const PartyStructure& structure() const { return structure_; }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  PartyStructure structure_;
  Vector amplitudes_;
};

/// Density matrix with explicit party structure. Construction enforces
/// hermiticity (1e-10 max-norm), positivity (min eigenvalue > -1e-10) and
/// unit trace (1e-10).
class QuantumState {
 public:
  QuantumState(PartyStructure structure, Matrix matrix);

  const PartyStructure& structure() const { return structure_; }
  const Matrix& matrix() const { return matrix_; }

 private:
  PartyStructure structure_;
  Matrix matrix_;
};

QuantumState from_pure(const PureState& psi);

/// Reduced state on the kept parties (indices ascending, nonempty).
QuantumState partial_trace(const QuantumState& rho, std::span<const int> keep);

QuantumState tensor_product(const QuantumState& a, const QuantumState& b);

/// kron chain of one local vector per party.
Vector product_vector(const PartyStructure& structure, const std::vector<Vector>& factors);

/// Parsed form of the named-state grammar:
///   epr | ghz:<alpha> | w | psieff:<e>,<f>
struct NamedStateSpec {
  enum class Family { epr, ghz, w, psi_eff };
  Family family = Family::epr;
  Complex alpha{0.0, 0.0};  // ghz
  Complex e{0.0, 0.0};      // psi_eff
  Complex f{0.0, 0.0};      // psi_eff
};

/// Builds the named state on `embedding`. The embedding must start with the
/// state's natural qubit structure; extra trailing parties are padded with
/// their local |0>.
PureState make_named_state(const NamedStateSpec& spec, const PartyStructure& embedding);

PureState make_epr();                          // (|00> + |11>)/sqrt(2)
PureState make_ghz(Complex alpha);             // alpha|000> + sqrt(1-|alpha|^2)|111>
PureState make_w();                            // (|100> + |010> + |001>)/sqrt(3)
PureState make_psi_eff(Complex e, Complex f);  // e|100> + f|010> + f|001>

}  // namespace qree
